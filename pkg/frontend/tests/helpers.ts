/** Shared test scaffolding: fetch mocking, DOM settling, app mounting. */

import { vi } from "vitest";

import { ApiClient, type GeoPosition } from "../src/api.js";
import { App, type PositionSource } from "../src/app.js";

export type RouteHandler = (params: URLSearchParams, path: string) => unknown;

export interface MockRoutes {
  /** Keyed by exact path ("/api/categories") or prefix match for menus. */
  [path: string]: RouteHandler | { status: number; body?: unknown };
}

export function installFetch(routes: MockRoutes): ReturnType<typeof vi.fn> {
  const mock = vi.fn(async (input: RequestInfo | URL) => {
    const url = new URL(String(input), "http://app.test");
    const route = routes[decodeURIComponent(url.pathname)];
    if (route === undefined) {
      return new Response(JSON.stringify({ code: "not_found", message: "no route" }), {
        status: 404,
        headers: { "content-type": "application/json" },
      });
    }
    if (typeof route === "function") {
      const body = route(url.searchParams, url.pathname);
      return new Response(JSON.stringify(body), {
        status: 200,
        headers: { "content-type": "application/json" },
      });
    }
    return new Response(JSON.stringify(route.body ?? {}), {
      status: route.status,
      headers: { "content-type": "application/json" },
    });
  });
  vi.stubGlobal("fetch", mock);
  return mock;
}

export function failingFetch(): void {
  vi.stubGlobal(
    "fetch",
    vi.fn(async () => {
      throw new TypeError("network down");
    }),
  );
}

export class StubPositions implements PositionSource {
  constructor(
    public position: GeoPosition | null,
    public denied = false,
  ) {}

  async acquire(): Promise<GeoPosition> {
    if (this.denied || this.position === null) {
      throw new Error("User denied Geolocation");
    }
    return this.position;
  }
}

export function mountApp(positions?: StubPositions): { app: App; root: HTMLElement } {
  const root = document.createElement("div");
  document.body.replaceChildren(root);
  const app = new App(
    root,
    new ApiClient(),
    positions ?? new StubPositions({ latitude: 0, longitude: 0 }),
  );
  return { app, root };
}

/** Wait until `probe` returns truthy (microtask/timer churn tolerant). */
export async function until<T>(probe: () => T, timeoutMs = 1000): Promise<NonNullable<T>> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    const value = probe();
    if (value) {
      return value as NonNullable<T>;
    }
    if (Date.now() > deadline) {
      throw new Error("condition never became true");
    }
    await new Promise((resolve) => setTimeout(resolve, 5));
  }
}

export function texts(root: ParentNode, selector: string): string[] {
  return [...root.querySelectorAll(selector)].map((node) => node.textContent ?? "");
}

export function click(element: Element | null): void {
  if (!element) {
    throw new Error("element to click not found");
  }
  (element as HTMLElement).click();
}
