import { beforeEach, describe, expect, it } from "vitest";

import { nodeByLabel, renderDocument, renderLegend, setHighlight } from "../src/renderer.js";
import type { GraphDocument } from "../src/types.js";

const fixture: GraphDocument = {
  schema_version: "1",
  meta: { kind: "propositions", language: "de", translator: "", config: {} },
  nodes: [
    { id: "1", label: "die welt", group: 1, color: "#332288" },
    { id: "2.1", label: "das bild", group: 2, color: "#88ccee" },
  ],
  edges: [{ from: "1", to: "2.1", value: 0.5, length: 110 }],
};

describe("renderDocument", () => {
  let container: HTMLElement;

  beforeEach(() => {
    container = document.createElement("div");
    document.body.appendChild(container);
  });

  it("renders exactly the document's nodes and edges", () => {
    renderDocument(container, fixture);
    expect(container.querySelectorAll("circle")).toHaveLength(2);
    expect(container.querySelectorAll("line")).toHaveLength(1);
  });

  it("applies the document colors verbatim", () => {
    const view = renderDocument(container, fixture);
    expect(view.nodeElements.get("1")!.getAttribute("fill")).toBe("#332288");
    expect(view.nodeElements.get("2.1")!.getAttribute("fill")).toBe("#88ccee");
  });

  it("keeps the document edge length as the spring rest length", () => {
    const view = renderDocument(container, fixture);
    expect(view.edgeElements[0].dataset.length).toBe("110");
    expect(view.simulation.springs[0].rest).toBe(110);
  });

  it("gives every node a position after the warm-up", () => {
    const view = renderDocument(container, fixture);
    for (const circle of view.nodeElements.values()) {
      expect(circle.getAttribute("cx")).toBeTruthy();
      expect(circle.getAttribute("cy")).toBeTruthy();
    }
  });

  it("finds nodes by label", () => {
    const view = renderDocument(container, fixture);
    expect(nodeByLabel(view, "die welt")?.id).toBe("1");
    expect(nodeByLabel(view, "nope")).toBeNull();
  });
});

describe("renderLegend", () => {
  it("always shows seven entries and marks the present groups", () => {
    const container = document.createElement("div");
    renderLegend(container, fixture);
    const entries = container.querySelectorAll(".legend-entry");
    expect(entries).toHaveLength(7);
    const present = container.querySelectorAll(".legend-entry.present");
    expect([...present].map((e) => (e as HTMLElement).dataset.group)).toEqual(["1", "2"]);
  });
});

describe("setHighlight", () => {
  it("highlights exactly one node and can clear it", () => {
    const container = document.createElement("div");
    const view = renderDocument(container, fixture);
    setHighlight(view, "2.1");
    expect(view.nodeElements.get("2.1")!.classList.contains("highlighted")).toBe(true);
    expect(view.nodeElements.get("1")!.classList.contains("highlighted")).toBe(false);
    setHighlight(view, null);
    expect(container.querySelectorAll(".highlighted")).toHaveLength(0);
  });
});
