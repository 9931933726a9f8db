// SVG view of one graph document: a pure function of the document plus the
// simulation positions. No client-side filtering; every node and edge of
// the document is rendered, colors come straight from the document.

import { Simulation } from "./physics.js";
import type { DocNode, GraphDocument } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const GROUPS = [1, 2, 3, 4, 5, 6, 7];

// Matches the server's default palette; used only for legend slots whose
// group does not occur in the document (nodes always use their own color).
const LEGEND_FALLBACK = [
  "#332288",
  "#88ccee",
  "#44aa99",
  "#117733",
  "#ddcc77",
  "#cc6677",
  "#aa4499",
];

export interface RenderedView {
  svg: SVGSVGElement;
  simulation: Simulation;
  nodeElements: Map<string, SVGCircleElement>;
  edgeElements: SVGLineElement[];
  labelFor: Map<string, string>;
}

export function renderDocument(container: HTMLElement, doc: GraphDocument): RenderedView {
  container.textContent = "";
  const svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("class", "network-view");
  svg.setAttribute("viewBox", "-400 -300 800 600");
  const edgeLayer = document.createElementNS(SVG_NS, "g");
  edgeLayer.setAttribute("class", "edges");
  const nodeLayer = document.createElementNS(SVG_NS, "g");
  nodeLayer.setAttribute("class", "nodes");
  svg.appendChild(edgeLayer);
  svg.appendChild(nodeLayer);

  const simulation = new Simulation(doc.nodes, doc.edges);
  const nodeElements = new Map<string, SVGCircleElement>();
  const labelFor = new Map<string, string>();

  const edgeElements: SVGLineElement[] = [];
  for (const edge of doc.edges) {
    const line = document.createElementNS(SVG_NS, "line") as SVGLineElement;
    line.setAttribute("class", "edge");
    line.dataset.from = edge.from;
    line.dataset.to = edge.to;
    if (edge.length !== undefined) line.dataset.length = String(edge.length);
    if (edge.value !== undefined) line.dataset.value = String(edge.value);
    if (edge.weight !== undefined) {
      line.dataset.weight = String(edge.weight);
      line.setAttribute("stroke-width", String(Math.min(6, 1 + Math.log2(edge.weight))));
    }
    edgeLayer.appendChild(line);
    edgeElements.push(line);
  }

  for (const node of doc.nodes) {
    const circle = document.createElementNS(SVG_NS, "circle") as SVGCircleElement;
    circle.setAttribute("class", "node");
    circle.setAttribute("r", "7");
    circle.setAttribute("fill", node.color);
    circle.dataset.id = node.id;
    circle.dataset.group = String(node.group);
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.id}: ${node.label}`;
    circle.appendChild(title);
    nodeLayer.appendChild(circle);
    nodeElements.set(node.id, circle);
    labelFor.set(node.id, node.label);
  }

  container.appendChild(svg);
  const view = { svg, simulation, nodeElements, edgeElements, labelFor };
  simulation.run(60);
  syncPositions(view);
  return view;
}

export function syncPositions(view: RenderedView): void {
  for (const [id, circle] of view.nodeElements) {
    const body = view.simulation.positionOf(id);
    if (!body) continue;
    circle.setAttribute("cx", body.x.toFixed(1));
    circle.setAttribute("cy", body.y.toFixed(1));
  }
  for (const line of view.edgeElements) {
    const a = view.simulation.positionOf(line.dataset.from ?? "");
    const b = view.simulation.positionOf(line.dataset.to ?? "");
    if (!a || !b) continue;
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
  }
}

export function renderLegend(container: HTMLElement, doc: GraphDocument): void {
  container.textContent = "";
  const present = new Map<number, string>();
  for (const node of doc.nodes) {
    if (!present.has(node.group)) present.set(node.group, node.color);
  }
  const list = document.createElement("ul");
  list.className = "legend";
  for (const group of GROUPS) {
    const item = document.createElement("li");
    item.className = present.has(group) ? "legend-entry present" : "legend-entry absent";
    item.dataset.group = String(group);
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = present.get(group) ?? LEGEND_FALLBACK[group - 1];
    const text = document.createElement("span");
    text.textContent = `group ${group}`;
    item.appendChild(swatch);
    item.appendChild(text);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function setHighlight(view: RenderedView, id: string | null): void {
  for (const [nodeId, circle] of view.nodeElements) {
    if (id !== null && nodeId === id) {
      circle.classList.add("highlighted");
    } else {
      circle.classList.remove("highlighted");
    }
  }
}

export function panTo(view: RenderedView, id: string): void {
  const body = view.simulation.positionOf(id);
  if (!body) return;
  const width = 400;
  const height = 300;
  view.svg.setAttribute(
    "viewBox",
    `${(body.x - width / 2).toFixed(1)} ${(body.y - height / 2).toFixed(1)} ${width} ${height}`
  );
}

export function nodeByLabel(view: RenderedView, label: string): DocNode | null {
  for (const [id, text] of view.labelFor) {
    if (text === label) {
      const circle = view.nodeElements.get(id);
      if (!circle) return null;
      return {
        id,
        label: text,
        group: Number(circle.dataset.group ?? "1"),
        color: circle.getAttribute("fill") ?? "",
      };
    }
  }
  return null;
}
