// Small spring embedder: edges pull toward their rest length from the
// document, nodes repel, everything drifts gently toward the centre.
// Deterministic: initial positions are a hash of the node id, no RNG.

import type { DocEdge, DocNode } from "./types.js";

export interface Body {
  id: string;
  x: number;
  y: number;
  vx: number;
  vy: number;
}

export interface Spring {
  a: number; // index into bodies
  b: number;
  rest: number;
}

const DEFAULT_REST = 120;
const SPRING = 0.02;
const REPULSION = 1800;
const CENTERING = 0.005;
const DAMPING = 0.85;
const MAX_STEP = 18;

function hash(text: string): number {
  let h = 2166136261;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

export class Simulation {
  bodies: Body[] = [];
  springs: Spring[] = [];
  private index = new Map<string, number>();

  constructor(nodes: DocNode[], edges: DocEdge[]) {
    const spread = Math.max(200, 40 * Math.sqrt(nodes.length));
    nodes.forEach((node, i) => {
      const h = hash(node.id);
      const angle = ((h % 3600) / 3600) * 2 * Math.PI;
      const radius = (((h >>> 12) % 1000) / 1000) * spread + 10;
      this.bodies.push({
        id: node.id,
        x: Math.cos(angle) * radius,
        y: Math.sin(angle) * radius,
        vx: 0,
        vy: 0,
      });
      this.index.set(node.id, i);
    });
    for (const edge of edges) {
      const a = this.index.get(edge.from);
      const b = this.index.get(edge.to);
      if (a === undefined || b === undefined) continue;
      this.springs.push({ a, b, rest: edge.length ?? DEFAULT_REST });
    }
  }

  positionOf(id: string): Body | undefined {
    const i = this.index.get(id);
    return i === undefined ? undefined : this.bodies[i];
  }

  tick(): void {
    const n = this.bodies.length;
    for (const spring of this.springs) {
      const pa = this.bodies[spring.a];
      const pb = this.bodies[spring.b];
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const dist = Math.max(1e-3, Math.hypot(dx, dy));
      const force = SPRING * (dist - spring.rest);
      const fx = (dx / dist) * force;
      const fy = (dy / dist) * force;
      pa.vx += fx;
      pa.vy += fy;
      pb.vx -= fx;
      pb.vy -= fy;
    }
    for (let i = 0; i < n; i++) {
      const pi = this.bodies[i];
      for (let j = i + 1; j < n; j++) {
        const pj = this.bodies[j];
        let dx = pj.x - pi.x;
        let dy = pj.y - pi.y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          // identical seeds: nudge apart deterministically by index
          dx = 0.1 * (j - i);
          dy = 0.07 * (j - i);
          d2 = dx * dx + dy * dy;
        }
        const force = REPULSION / d2;
        const dist = Math.sqrt(d2);
        const fx = (dx / dist) * force;
        const fy = (dy / dist) * force;
        pi.vx -= fx;
        pi.vy -= fy;
        pj.vx += fx;
        pj.vy += fy;
      }
    }
    for (const body of this.bodies) {
      body.vx -= body.x * CENTERING;
      body.vy -= body.y * CENTERING;
      body.vx *= DAMPING;
      body.vy *= DAMPING;
      body.x += Math.max(-MAX_STEP, Math.min(MAX_STEP, body.vx));
      body.y += Math.max(-MAX_STEP, Math.min(MAX_STEP, body.vy));
    }
  }

  run(ticks: number): void {
    for (let i = 0; i < ticks; i++) this.tick();
  }
}
