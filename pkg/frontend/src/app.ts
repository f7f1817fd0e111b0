/**
 * Controller: owns the navigation stack, drives fetches, and swaps the
 * active screen into the mount point. The page never reloads; rapid
 * re-scans are latest-wins via a request sequence number.
 */

import {
  ApiClient,
  ApiUnreachableError,
  RestaurantNotFoundError,
  type GeoPosition,
  type MenuRow,
} from "./api.js";
import { DEFAULT_RADIUS_M, NavigationStack, type ViewState } from "./state.js";
import {
  byFoodTypeView,
  errorBanner,
  homeView,
  itemDetailView,
  menuView,
  nearbyView,
  notFoundView,
  renderTips,
  showManualPositionForm,
} from "./views.js";

export interface PositionSource {
  /** Resolve the device position or reject (denied / unavailable). */
  acquire(): Promise<GeoPosition>;
}

export function browserPositionSource(): PositionSource {
  return {
    acquire: () =>
      new Promise((resolve, reject) => {
        if (!("geolocation" in navigator)) {
          reject(new Error("geolocation unsupported"));
          return;
        }
        navigator.geolocation.getCurrentPosition(
          (result) =>
            resolve({
              latitude: result.coords.latitude,
              longitude: result.coords.longitude,
            }),
          (error) => reject(new Error(error.message)),
          { timeout: 8_000 },
        );
      }),
  };
}

export class App {
  private nav = new NavigationStack();
  private seq = 0;

  constructor(
    private mount: HTMLElement,
    private api: ApiClient = new ApiClient(),
    private positions: PositionSource = browserPositionSource(),
    private radius: number = DEFAULT_RADIUS_M,
  ) {}

  get state(): ViewState {
    return this.nav.current;
  }

  private show(view: HTMLElement): void {
    this.mount.replaceChildren(view);
  }

  private nextSeq(): number {
    return ++this.seq;
  }

  /** Drop stale responses when a newer request has been issued. */
  private isCurrent(seq: number): boolean {
    return seq === this.seq;
  }

  async start(): Promise<void> {
    await this.showHome();
  }

  async showHome(push = false): Promise<void> {
    const seq = this.nextSeq();
    let apiDown = false;
    try {
      await this.api.categories();
    } catch (error) {
      apiDown = error instanceof ApiUnreachableError;
    }
    if (!this.isCurrent(seq)) {
      return;
    }
    if (push) {
      this.nav.push({ screen: "home", radius: this.radius });
    } else {
      this.nav.current = { screen: "home", radius: this.radius };
    }
    this.show(
      homeView(
        {
          onByFoodType: () => void this.showByFoodType(),
          onNearby: () => void this.scanNearby(),
          onManualPosition: (latitude, longitude) =>
            void this.scanNearby({ latitude, longitude }),
          onSearch: (name) => void this.openRestaurant(name),
        },
        apiDown,
      ),
    );
  }

  async showByFoodType(selectedCategory?: string): Promise<void> {
    const seq = this.nextSeq();
    try {
      const categories = await this.api.categories();
      const restaurants =
        selectedCategory === undefined ? null : await this.api.restaurants(selectedCategory);
      if (!this.isCurrent(seq)) {
        return;
      }
      this.nav.push({ screen: "byFoodType", selectedCategory, radius: this.radius });
      this.show(
        byFoodTypeView(
          categories,
          restaurants,
          selectedCategory,
          (category) => void this.showByFoodType(category),
          (name) => void this.openRestaurant(name),
          () => this.back(),
        ),
      );
    } catch (error) {
      this.showError(error);
    }
  }

  /** Acquire a position (device or supplied) and list what is close. */
  async scanNearby(manual?: GeoPosition): Promise<void> {
    let position = manual;
    if (!position) {
      try {
        position = await this.positions.acquire();
      } catch {
        // Denied or unavailable: fall back to manual coordinate entry.
        showManualPositionForm(this.mount);
        return;
      }
    }
    await this.renderNearby(position, true);
  }

  private async renderNearby(position: GeoPosition, push: boolean): Promise<void> {
    const seq = this.nextSeq();
    try {
      const rows = await this.api.nearby(position, this.radius);
      if (!this.isCurrent(seq)) {
        return;
      }
      const state: ViewState = {
        screen: "nearbyList",
        userPosition: position,
        radius: this.radius,
      };
      if (push) {
        this.nav.push(state);
      } else {
        this.nav.current = state;
      }
      this.show(
        nearbyView(
          rows,
          this.radius,
          (name) => void this.openRestaurant(name),
          () => void this.rescan(),
          () => this.back(),
        ),
      );
    } catch (error) {
      this.showError(error);
    }
  }

  /** "Scan again": re-acquire the position, then re-query. */
  private async rescan(): Promise<void> {
    let position: GeoPosition;
    try {
      position = await this.positions.acquire();
    } catch {
      const current = this.nav.current.userPosition;
      if (!current) {
        showManualPositionForm(this.mount);
        return;
      }
      position = current;
    }
    await this.renderNearby(position, false);
  }

  async openRestaurant(name: string): Promise<void> {
    const seq = this.nextSeq();
    try {
      const rows = await this.api.menu(name);
      if (!this.isCurrent(seq)) {
        return;
      }
      this.nav.push({ screen: "menu", selectedRestaurant: name, radius: this.radius });
      this.show(
        menuView(
          name,
          rows,
          (item) => this.openItem(name, item),
          () => this.back(),
        ),
      );
    } catch (error) {
      if (error instanceof RestaurantNotFoundError) {
        this.show(notFoundView(name, () => this.back()));
        return;
      }
      this.showError(error);
    }
  }

  openItem(restaurant: string, item: MenuRow): void {
    this.nav.push({
      screen: "itemDetail",
      selectedRestaurant: restaurant,
      selectedItem: item,
      radius: this.radius,
    });
    this.show(
      itemDetailView(
        item,
        (container) => {
          void this.api
            .tips(item.category, item.label)
            .then((tips) => renderTips(container, tips))
            .catch(() => renderTips(container, []));
        },
        () => this.back(),
      ),
    );
  }

  /** Return to the previous screen; re-renders it from current data. */
  back(): void {
    const state = this.nav.back();
    void this.renderState(state);
  }

  private async renderState(state: ViewState): Promise<void> {
    switch (state.screen) {
      case "home":
        await this.showHome();
        return;
      case "byFoodType": {
        // Re-enter without growing the stack.
        this.nav.back();
        await this.showByFoodType(state.selectedCategory);
        return;
      }
      case "nearbyList":
        if (state.userPosition) {
          await this.renderNearby(state.userPosition, false);
        }
        return;
      case "menu": {
        this.nav.back();
        if (state.selectedRestaurant) {
          await this.openRestaurant(state.selectedRestaurant);
        }
        return;
      }
      case "itemDetail": {
        this.nav.back();
        if (state.selectedRestaurant && state.selectedItem) {
          this.openItem(state.selectedRestaurant, state.selectedItem);
        }
        return;
      }
    }
  }

  private showError(error: unknown): void {
    const message =
      error instanceof ApiUnreachableError
        ? "The menu service is unreachable. Try again in a moment."
        : `Something went wrong: ${String(error)}`;
    this.mount.prepend(errorBanner(message));
  }
}
