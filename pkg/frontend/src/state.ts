/**
 * Screen state and the back stack. Navigation never reloads the page;
 * every transition pushes the previous state so each screen is
 * returnable.
 */

import type { GeoPosition, MenuRow } from "./api.js";

export const DEFAULT_RADIUS_M = 500;

export type Screen = "home" | "byFoodType" | "nearbyList" | "menu" | "itemDetail";

export interface ViewState {
  screen: Screen;
  selectedCategory?: string;
  selectedRestaurant?: string;
  selectedItem?: MenuRow;
  userPosition?: GeoPosition;
  radius: number;
}

export function homeState(): ViewState {
  return { screen: "home", radius: DEFAULT_RADIUS_M };
}

/** Throws when a state violates the screen preconditions. */
export function assertViewState(state: ViewState): void {
  if (state.screen === "menu" || state.screen === "itemDetail") {
    if (!state.selectedRestaurant) {
      throw new Error(`${state.screen} screen requires a selected restaurant`);
    }
  }
  if (state.screen === "itemDetail" && !state.selectedItem) {
    throw new Error("itemDetail screen requires a selected item");
  }
  if (state.screen === "nearbyList" && !state.userPosition) {
    throw new Error("nearbyList screen requires a user position");
  }
  if (!(state.radius > 0)) {
    throw new Error("radius must be positive");
  }
}

export class NavigationStack {
  private stack: ViewState[] = [];
  current: ViewState = homeState();

  push(next: ViewState): ViewState {
    assertViewState(next);
    this.stack.push(this.current);
    this.current = next;
    return next;
  }

  /** Pop back one screen; stays on home when the stack is empty. */
  back(): ViewState {
    const previous = this.stack.pop();
    if (previous) {
      this.current = previous;
    }
    return this.current;
  }

  get depth(): number {
    return this.stack.length;
  }
}
