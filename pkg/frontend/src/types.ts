// Shapes of the documents served by the read-only network API.

export interface DocNode {
  id: string;
  label: string;
  group: number; // 1..7
  color: string;
}

export interface DocEdge {
  from: string;
  to: string;
  value?: number; // similarity score, proposition networks
  length?: number; // rest length in px, proposition networks
  weight?: number; // supporting propositions, concept networks
}

export interface GraphDocument {
  schema_version: string;
  meta: {
    kind: "propositions" | "concepts";
    language: string;
    translator: string;
    config: Record<string, unknown>;
  };
  nodes: DocNode[];
  edges: DocEdge[];
}

export interface NetworkListing {
  id: string;
  kind: string;
  language: string;
  translator: string;
  nodes: number;
  edges: number;
}

export interface SearchHit {
  id: string;
  score: number;
}

export interface SearchResponse {
  net: string;
  query: string;
  results: SearchHit[];
}

export interface ViewState {
  selectedNetwork: string | null;
  highlighted: string | null;
  physicsOn: boolean;
}
