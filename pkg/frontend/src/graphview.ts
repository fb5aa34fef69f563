/** SVG subgraph view: force layout, pan/zoom, node dragging.
 *
 * Node color is determined solely by entity kind (articles yellow, terms
 * blue).  Zooming and dragging only touch the viewport and layout, never
 * the underlying view state.
 */

import { layout, LayoutNode } from './force';
import type { EntityKind, SubgraphPayload } from './types';

export const NODE_COLORS: Record<EntityKind, string> = {
  article: '#f2c94c', // yellow: articles (their PubMed ids)
  term: '#2d9cdb', // blue: query-related terms
};

export function nodeColor(kind: EntityKind): string {
  return NODE_COLORS[kind];
}

export interface GraphViewCallbacks {
  onNodeDoubleClick?: (nodeId: number) => void;
  onNodeClick?: (nodeId: number) => void;
}

const SVG_NS = 'http://www.w3.org/2000/svg';

export class GraphView {
  private readonly svg: SVGSVGElement;
  private readonly viewport: SVGGElement;
  private readonly callbacks: GraphViewCallbacks;
  private positions = new Map<number, LayoutNode>();
  private payload: SubgraphPayload | null = null;
  private scale = 1;
  private panX = 0;
  private panY = 0;
  private dragging: { id: number; startX: number; startY: number } | null = null;

  constructor(svg: SVGSVGElement, callbacks: GraphViewCallbacks = {}) {
    this.svg = svg;
    this.callbacks = callbacks;
    this.viewport = document.createElementNS(SVG_NS, 'g');
    this.viewport.setAttribute('class', 'viewport');
    this.svg.appendChild(this.viewport);
    this.svg.addEventListener('wheel', (event) => this.onWheel(event as WheelEvent));
    this.svg.addEventListener('mousemove', (event) => this.onMouseMove(event as MouseEvent));
    this.svg.addEventListener('mouseup', () => (this.dragging = null));
    this.svg.addEventListener('mouseleave', () => (this.dragging = null));
  }

  private size(): { width: number; height: number } {
    const width = Number(this.svg.getAttribute('width') ?? 800);
    const height = Number(this.svg.getAttribute('height') ?? 520);
    return { width, height };
  }

  render(payload: SubgraphPayload): void {
    this.payload = payload;
    const { width, height } = this.size();
    this.positions = layout(
      payload.nodes.map((n) => n.id),
      payload.edges,
      { width, height, seed: payload.center + 1 },
    );
    const center = this.positions.get(payload.center);
    if (center) {
      center.x = width / 2;
      center.y = height / 2;
    }
    this.redraw();
  }

  /** Current node ids in the drawing, for tests and sanity checks. */
  nodeIds(): number[] {
    return [...this.positions.keys()];
  }

  private redraw(): void {
    if (!this.payload) return;
    this.viewport.innerHTML = '';
    this.viewport.setAttribute(
      'transform',
      `translate(${this.panX} ${this.panY}) scale(${this.scale})`,
    );
    const edgesGroup = document.createElementNS(SVG_NS, 'g');
    for (const edge of this.payload.edges) {
      const a = this.positions.get(edge.head);
      const b = this.positions.get(edge.tail);
      if (!a || !b) continue;
      const line = document.createElementNS(SVG_NS, 'line');
      line.setAttribute('x1', String(a.x));
      line.setAttribute('y1', String(a.y));
      line.setAttribute('x2', String(b.x));
      line.setAttribute('y2', String(b.y));
      line.setAttribute('class', 'edge');
      line.setAttribute('data-head', String(edge.head));
      line.setAttribute('data-tail', String(edge.tail));
      edgesGroup.appendChild(line);
      const label = document.createElementNS(SVG_NS, 'text');
      label.setAttribute('x', String((a.x + b.x) / 2));
      label.setAttribute('y', String((a.y + b.y) / 2 - 3));
      label.setAttribute('class', 'edge-label');
      label.textContent = edge.relation;
      edgesGroup.appendChild(label);
    }
    this.viewport.appendChild(edgesGroup);

    const nodesGroup = document.createElementNS(SVG_NS, 'g');
    for (const node of this.payload.nodes) {
      const pos = this.positions.get(node.id);
      if (!pos) continue;
      const group = document.createElementNS(SVG_NS, 'g');
      group.setAttribute('class', 'node');
      group.setAttribute('data-id', String(node.id));
      group.setAttribute('data-kind', node.kind);
      const circle = document.createElementNS(SVG_NS, 'circle');
      circle.setAttribute('cx', String(pos.x));
      circle.setAttribute('cy', String(pos.y));
      circle.setAttribute('r', node.id === this.payload.center ? '14' : '10');
      circle.setAttribute('fill', nodeColor(node.kind));
      group.appendChild(circle);
      const label = document.createElementNS(SVG_NS, 'text');
      label.setAttribute('x', String(pos.x));
      label.setAttribute('y', String(pos.y - 14));
      label.setAttribute('class', 'node-label');
      label.textContent = node.name;
      group.appendChild(label);
      group.addEventListener('mousedown', (event) => {
        this.dragging = {
          id: node.id,
          startX: (event as MouseEvent).clientX,
          startY: (event as MouseEvent).clientY,
        };
      });
      group.addEventListener('click', () => this.callbacks.onNodeClick?.(node.id));
      group.addEventListener('dblclick', () =>
        this.callbacks.onNodeDoubleClick?.(node.id),
      );
      nodesGroup.appendChild(group);
    }
    this.viewport.appendChild(nodesGroup);
  }

  private onWheel(event: WheelEvent): void {
    event.preventDefault();
    const factor = event.deltaY < 0 ? 1.1 : 1 / 1.1;
    this.scale = Math.min(8, Math.max(0.2, this.scale * factor));
    this.redraw();
  }

  private onMouseMove(event: MouseEvent): void {
    if (!this.dragging) return;
    const node = this.positions.get(this.dragging.id);
    if (!node) return;
    node.x += (event.clientX - this.dragging.startX) / this.scale;
    node.y += (event.clientY - this.dragging.startY) / this.scale;
    node.fixed = true;
    this.dragging.startX = event.clientX;
    this.dragging.startY = event.clientY;
    this.redraw();
  }
}
