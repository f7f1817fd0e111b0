/**
 * DOM builders for every screen. Pure functions from data + handlers to
 * elements; all user-visible data goes in via textContent, never markup.
 *
 * Menus are rendered exactly in API order with the traffic-light icon
 * left of the item name; this module never sorts or relabels anything.
 */

import type { Label, MenuRow, NearbyRow } from "./api.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function button(label: string, className: string, onClick: () => void): HTMLButtonElement {
  const node = el("button", className, label);
  node.addEventListener("click", onClick);
  return node;
}

export function errorBanner(message: string): HTMLElement {
  const banner = el("div", "error-banner", message);
  banner.setAttribute("role", "alert");
  return banner;
}

export function backBar(onBack: () => void): HTMLElement {
  const bar = el("div", "back-bar");
  bar.append(button("← Back", "back-button", onBack));
  return bar;
}

export interface HomeHandlers {
  onByFoodType: () => void;
  onNearby: () => void;
  onManualPosition: (latitude: number, longitude: number) => void;
  onSearch: (name: string) => void;
}

export function homeView(handlers: HomeHandlers, apiDown: boolean): HTMLElement {
  const root = el("section", "screen screen-home");
  root.append(el("h1", "app-title", "What should I eat?"));
  if (apiDown) {
    root.append(errorBanner("The menu service is unreachable. Try again in a moment."));
  }

  const byType = el("div", "home-card card-by-type");
  byType.append(el("h2", undefined, "By food type"));
  byType.append(button("Browse categories", "go-by-type", handlers.onByFoodType));
  root.append(byType);

  const near = el("div", "home-card card-nearby");
  near.append(el("h2", undefined, "Places near you"));
  near.append(button("Scan for restaurants", "go-nearby", handlers.onNearby));
  const manual = el("form", "manual-position");
  manual.hidden = true;
  const latInput = el("input", "manual-lat");
  latInput.placeholder = "latitude";
  latInput.name = "lat";
  const lonInput = el("input", "manual-lon");
  lonInput.placeholder = "longitude";
  lonInput.name = "lon";
  const go = el("button", "manual-go", "Go");
  go.type = "submit";
  manual.append(el("p", "manual-hint", "Location unavailable; enter coordinates:"));
  manual.append(latInput, lonInput, go);
  manual.addEventListener("submit", (event) => {
    event.preventDefault();
    const latitude = Number(latInput.value);
    const longitude = Number(lonInput.value);
    if (Number.isFinite(latitude) && Number.isFinite(longitude)) {
      handlers.onManualPosition(latitude, longitude);
    }
  });
  near.append(manual);
  root.append(near);

  const search = el("div", "home-card card-search");
  search.append(el("h2", undefined, "Find a restaurant by name"));
  const form = el("form", "name-search");
  const input = el("input", "name-input");
  input.placeholder = "e.g. Burger Hut";
  const go2 = el("button", "name-go", "Open menu");
  go2.type = "submit";
  form.append(input, go2);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (input.value.trim()) {
      handlers.onSearch(input.value.trim());
    }
  });
  search.append(form);
  root.append(search);
  return root;
}

/** Reveal the manual coordinate form inside an already-rendered home. */
export function showManualPositionForm(root: HTMLElement): void {
  const form = root.querySelector<HTMLFormElement>(".manual-position");
  if (form) {
    form.hidden = false;
  }
}

export function byFoodTypeView(
  categories: string[],
  restaurants: { name: string }[] | null,
  selectedCategory: string | undefined,
  onCategory: (category: string) => void,
  onRestaurant: (name: string) => void,
  onBack: () => void,
): HTMLElement {
  const root = el("section", "screen screen-by-type");
  root.append(backBar(onBack));
  root.append(el("h1", undefined, "By food type"));
  const list = el("ul", "category-list");
  for (const category of categories) {
    const item = el("li", "category-item");
    const pick = button(category, "category-button", () => onCategory(category));
    if (category === selectedCategory) {
      pick.classList.add("selected");
    }
    item.append(pick);
    list.append(item);
  }
  root.append(list);

  if (selectedCategory !== undefined && restaurants !== null) {
    root.append(el("h2", undefined, `Restaurants with ${selectedCategory}`));
    const venues = el("ul", "restaurant-list");
    for (const venue of restaurants) {
      const item = el("li", "restaurant-item");
      item.append(button(venue.name, "restaurant-button", () => onRestaurant(venue.name)));
      venues.append(item);
    }
    if (restaurants.length === 0) {
      venues.append(el("li", "restaurant-none", "No restaurants in this category."));
    }
    root.append(venues);
  }
  return root;
}

export function nearbyView(
  rows: NearbyRow[],
  radius: number,
  onOpen: (name: string) => void,
  onScanAgain: () => void,
  onBack: () => void,
): HTMLElement {
  const root = el("section", "screen screen-nearby");
  root.append(backBar(onBack));
  root.append(el("h1", undefined, "Places near you"));
  root.append(el("p", "nearby-radius", `Within ${radius} m of your position`));

  const dropdown = el("select", "nearby-select");
  for (const row of rows) {
    const option = el("option");
    option.value = row.name;
    option.textContent = `${row.name} (${Math.round(row.distance_m)} m)`;
    dropdown.append(option);
  }
  root.append(dropdown);
  if (rows.length === 0) {
    root.append(el("p", "nearby-none", "Nothing close by. Try scanning again."));
  }
  const open = button("Open menu", "nearby-open", () => {
    if (dropdown.value) {
      onOpen(dropdown.value);
    }
  });
  open.disabled = rows.length === 0;
  root.append(open);
  root.append(button("Scan again", "scan-again", onScanAgain));
  return root;
}

function trafficLightIcon(label: Label): HTMLElement {
  const icon = el("span", `light light-${label}`, "●");
  icon.setAttribute("title", label);
  icon.setAttribute("data-label", label);
  return icon;
}

export function menuView(
  restaurant: string,
  rows: MenuRow[],
  onItem: (item: MenuRow) => void,
  onBack: () => void,
): HTMLElement {
  const root = el("section", "screen screen-menu");
  root.append(backBar(onBack));
  root.append(el("h1", undefined, restaurant));
  const list = el("ul", "menu-list");
  for (const row of rows) {
    const item = el("li", "menu-item");
    item.setAttribute("data-label", row.label);
    // Icon first: it sits left of the name.
    item.append(trafficLightIcon(row.label));
    item.append(el("span", "menu-item-name", row.name));
    item.addEventListener("click", () => onItem(row));
    list.append(item);
  }
  root.append(list);
  if (rows.length === 0) {
    root.append(el("p", "menu-empty", "This menu is empty."));
  }
  return root;
}

function formatQuantity(value: number | null, unit: string): string {
  return value === null ? "not published" : `${value} ${unit}`;
}

export function itemDetailView(
  item: MenuRow,
  onTips: (container: HTMLElement) => void,
  onBack: () => void,
): HTMLElement {
  const root = el("section", "screen screen-item");
  root.append(backBar(onBack));
  const heading = el("h1", "item-heading");
  heading.append(trafficLightIcon(item.label));
  heading.append(el("span", "item-name", item.name));
  root.append(heading);

  // Exactly the three displayed nutrients.
  const facts = el("dl", "nutrition-facts");
  const entries: [string, string][] = [
    ["Calories", formatQuantity(item.calories, "kcal")],
    ["Fat", formatQuantity(item.total_fat, "g")],
    ["Saturated Fat", formatQuantity(item.saturated_fat, "g")],
  ];
  for (const [term, value] of entries) {
    facts.append(el("dt", "fact-term", term));
    facts.append(el("dd", "fact-value", value));
  }
  root.append(facts);

  const tipsBox = el("div", "tips-box");
  root.append(button("Tips for a healthier pick", "tips-button", () => onTips(tipsBox)));
  root.append(tipsBox);
  return root;
}

export function renderTips(container: HTMLElement, tips: { text: string }[]): void {
  container.replaceChildren();
  if (tips.length === 0) {
    container.append(el("p", "tips-none", "No tips for this one."));
    return;
  }
  const list = el("ul", "tips-list");
  for (const tip of tips) {
    list.append(el("li", "tip", tip.text));
  }
  container.append(list);
}

export function notFoundView(restaurant: string, onBack: () => void): HTMLElement {
  const root = el("section", "screen screen-not-found");
  root.append(backBar(onBack));
  root.append(el("h1", undefined, "Restaurant not found"));
  root.append(el("p", "not-found-name", `No menu for “${restaurant}”.`));
  return root;
}
