import type { GraphDocument, NetworkListing, SearchResponse } from "./types.js";

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) detail = body.error;
    } catch {
      // non-JSON error body; keep the status code
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}

export function fetchNetworks(): Promise<NetworkListing[]> {
  return getJson<NetworkListing[]>("/api/networks");
}

export function fetchNetwork(id: string): Promise<GraphDocument> {
  return getJson<GraphDocument>(`/api/network/${encodeURIComponent(id)}`);
}

export function searchNetwork(net: string, query: string, k = 1): Promise<SearchResponse> {
  const params = new URLSearchParams({ net, q: query, k: String(k) });
  return getJson<SearchResponse>(`/api/search?${params.toString()}`);
}
