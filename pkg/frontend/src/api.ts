/**
 * Typed client for the consumer JSON API. The UI talks to nothing else.
 */

export type Label = "green" | "yellow" | "red" | "unclassified";

export interface MenuRow {
  name: string;
  category: string;
  label: Label;
  calories: number | null;
  total_fat: number | null;
  saturated_fat: number | null;
}

export interface NearbyRow {
  name: string;
  distance_m: number;
}

export interface GeoPosition {
  latitude: number;
  longitude: number;
}

export class ApiUnreachableError extends Error {
  constructor(cause: unknown) {
    super(`API unreachable: ${String(cause)}`);
  }
}

export class RestaurantNotFoundError extends Error {
  constructor(public restaurant: string) {
    super(`restaurant not found: ${restaurant}`);
  }
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async get<T>(path: string, params: Record<string, string> = {}): Promise<T> {
    const query = new URLSearchParams(params).toString();
    const url = `${this.baseUrl}${path}${query ? `?${query}` : ""}`;
    let response: Response;
    try {
      response = await fetch(url);
    } catch (cause) {
      throw new ApiUnreachableError(cause);
    }
    if (!response.ok) {
      throw new Error(`GET ${path} -> ${response.status}`);
    }
    return (await response.json()) as T;
  }

  categories(): Promise<string[]> {
    return this.get("/api/categories");
  }

  restaurants(category: string): Promise<{ name: string }[]> {
    return this.get("/api/restaurants", { category });
  }

  async menu(restaurant: string): Promise<MenuRow[]> {
    const path = `/api/restaurants/${encodeURIComponent(restaurant)}/menu`;
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}${path}`);
    } catch (cause) {
      throw new ApiUnreachableError(cause);
    }
    if (response.status === 404) {
      throw new RestaurantNotFoundError(restaurant);
    }
    if (!response.ok) {
      throw new Error(`GET ${path} -> ${response.status}`);
    }
    return (await response.json()) as MenuRow[];
  }

  nearby(position: GeoPosition, radius?: number): Promise<NearbyRow[]> {
    const params: Record<string, string> = {
      lat: String(position.latitude),
      lon: String(position.longitude),
    };
    if (radius !== undefined) {
      params.radius = String(radius);
    }
    return this.get("/api/nearby", params);
  }

  tips(category: string, label: Label): Promise<{ text: string }[]> {
    return this.get("/api/tips", { category, label });
  }
}
