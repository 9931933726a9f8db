// Wires the selector, the search box and the view together.  The client is
// a pure renderer plus fetcher: all similarity and search math stays on the
// server, the view shows exactly what the document says.

import { fetchNetwork, fetchNetworks, searchNetwork } from "./api.js";
import {
  RenderedView,
  panTo,
  renderDocument,
  renderLegend,
  setHighlight,
  syncPositions,
} from "./renderer.js";
import type { ViewState } from "./types.js";

export interface AppElements {
  selector: HTMLSelectElement;
  searchForm: HTMLFormElement;
  searchInput: HTMLInputElement;
  notice: HTMLElement;
  errorBanner: HTMLElement;
  graphContainer: HTMLElement;
  legendContainer: HTMLElement;
  physicsToggle: HTMLInputElement;
}

export class ExplorerApp {
  state: ViewState = { selectedNetwork: null, highlighted: null, physicsOn: true };
  view: RenderedView | null = null;
  private loadStamp = 0;
  private searchStamp = 0;
  private animating = false;

  constructor(private elements: AppElements) {
    elements.selector.addEventListener("change", () => {
      void this.loadNetwork(elements.selector.value);
    });
    elements.searchForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.searchHighlight(elements.searchInput.value);
    });
    elements.physicsToggle.addEventListener("change", () => {
      this.state.physicsOn = elements.physicsToggle.checked;
      if (this.state.physicsOn) this.animate();
    });
  }

  async start(): Promise<void> {
    try {
      const networks = await fetchNetworks();
      this.elements.selector.textContent = "";
      for (const network of networks) {
        const option = document.createElement("option");
        option.value = network.id;
        const translator = network.translator ? ` (${network.translator})` : "";
        option.textContent = `${network.kind} · ${network.language}${translator}`;
        this.elements.selector.appendChild(option);
      }
      const fromHash = window.location.hash.replace(/^#/, "");
      const initial =
        networks.find((n) => n.id === fromHash)?.id ?? networks[0]?.id ?? null;
      if (initial) {
        this.elements.selector.value = initial;
        await this.loadNetwork(initial);
      }
    } catch (err) {
      this.showError(`cannot list networks: ${(err as Error).message}`);
    }
  }

  async loadNetwork(id: string): Promise<void> {
    const stamp = ++this.loadStamp;
    try {
      const doc = await fetchNetwork(id);
      if (stamp !== this.loadStamp) return; // a newer load won
      this.clearError();
      this.clearNotice();
      this.state.selectedNetwork = id;
      this.state.highlighted = null;
      window.location.hash = id;
      this.view = renderDocument(this.elements.graphContainer, doc);
      renderLegend(this.elements.legendContainer, doc);
      if (this.state.physicsOn) this.animate();
    } catch (err) {
      // view stays unchanged on failure
      this.showError(`cannot load ${id}: ${(err as Error).message}`);
    }
  }

  async searchHighlight(query: string): Promise<void> {
    if (!this.state.selectedNetwork || !this.view) return;
    const stamp = ++this.searchStamp;
    try {
      const response = await searchNetwork(this.state.selectedNetwork, query, 1);
      if (stamp !== this.searchStamp) return;
      this.clearError();
      if (response.results.length === 0) {
        this.state.highlighted = null;
        setHighlight(this.view, null);
        this.showNotice("no match");
        return;
      }
      const top = response.results[0];
      this.state.highlighted = top.id;
      setHighlight(this.view, top.id);
      panTo(this.view, top.id);
      this.showNotice(`best match: ${top.id} (score ${top.score.toFixed(2)})`);
    } catch (err) {
      this.showError(`search failed: ${(err as Error).message}`);
    }
  }

  private animate(): void {
    if (this.animating || !this.view) return;
    this.animating = true;
    let remaining = 180;
    const step = () => {
      if (!this.view || !this.state.physicsOn || remaining-- <= 0) {
        this.animating = false;
        return;
      }
      this.view.simulation.tick();
      syncPositions(this.view);
      requestAnimationFrame(step);
    };
    requestAnimationFrame(step);
  }

  private showError(message: string): void {
    this.elements.errorBanner.textContent = message;
    this.elements.errorBanner.classList.add("visible");
  }

  private clearError(): void {
    this.elements.errorBanner.textContent = "";
    this.elements.errorBanner.classList.remove("visible");
  }

  private showNotice(message: string): void {
    this.elements.notice.textContent = message;
  }

  private clearNotice(): void {
    this.elements.notice.textContent = "";
  }
}

export function mount(root: Document = document): ExplorerApp {
  const byId = (id: string) => {
    const element = root.getElementById(id);
    if (!element) throw new Error(`missing #${id}`);
    return element;
  };
  const app = new ExplorerApp({
    selector: byId("network-select") as HTMLSelectElement,
    searchForm: byId("search-form") as HTMLFormElement,
    searchInput: byId("search-input") as HTMLInputElement,
    notice: byId("notice"),
    errorBanner: byId("error-banner"),
    graphContainer: byId("graph"),
    legendContainer: byId("legend"),
    physicsToggle: byId("physics-toggle") as HTMLInputElement,
  });
  return app;
}
