/** Application wiring: search loop, recommendation chips, detail board.
 *
 * The interaction loop: type a query, look at the retrieved subgraph,
 * follow a recommendation chip to refine, repeat.  Chips behave exactly
 * like typing the same text into the search bar; the breadcrumb records
 * the path taken.  At most one request per endpoint type is live; stale
 * responses are dropped.
 */

import { ApiClient, ApiRequestError } from './api';
import { GraphView } from './graphview';
import {
  initialState,
  invariantViolations,
  ViewState,
  withSearchFailure,
  withSearchResult,
  withSelection,
} from './state';
import type { SubgraphNode } from './types';

export interface AppElements {
  searchInput: HTMLInputElement;
  searchButton: HTMLElement;
  statusBanner: HTMLElement;
  chips: HTMLElement;
  history: HTMLElement;
  detail: HTMLElement;
  svg: SVGSVGElement;
}

export class App {
  readonly api: ApiClient;
  state: ViewState = initialState();
  private readonly elements: AppElements;
  private readonly view: GraphView;
  private searchGeneration = 0;

  constructor(api: ApiClient, elements: AppElements) {
    this.api = api;
    this.elements = elements;
    this.view = new GraphView(elements.svg, {
      onNodeDoubleClick: (id) => void this.selectEntity(id),
    });
    elements.searchButton.addEventListener('click', () => {
      void this.search(elements.searchInput.value);
    });
    elements.searchInput.addEventListener('keydown', (event) => {
      if ((event as KeyboardEvent).key === 'Enter') {
        void this.search(elements.searchInput.value);
      }
    });
  }

  /** Fetch subgraph + recommendations for a query and render everything. */
  async search(rawQuery: string): Promise<void> {
    const query = rawQuery.trim();
    if (!query) return;
    const generation = ++this.searchGeneration;
    this.setStatus('loading…', false);
    try {
      const [subgraph, recommendations] = await Promise.all([
        this.api.subgraph(query),
        this.api.recommend(query),
      ]);
      if (generation !== this.searchGeneration) return; // superseded
      this.state = withSearchResult(this.state, query, subgraph, recommendations);
      this.setStatus('', false);
      this.renderAll();
    } catch (error) {
      if (generation !== this.searchGeneration) return;
      this.state = withSearchFailure(this.state, query);
      if (error instanceof ApiRequestError && error.status === 404) {
        // keep the previous graph on screen; only show the banner
        this.setStatus(`no entity matches "${query}"`, true);
      } else {
        this.setStatus(`request failed: ${(error as Error).message}`, true);
      }
      this.renderHistory();
    }
  }

  /** Double-clicking a node populates the detail board. */
  async selectEntity(nodeId: number): Promise<void> {
    const node = this.state.subgraph?.nodes.find((n) => n.id === nodeId);
    if (!node) return;
    this.state = withSelection(this.state, nodeId);
    if (node.kind === 'article') {
      try {
        const detail = await this.api.article(node.name);
        this.elements.detail.innerHTML = '';
        this.elements.detail.appendChild(this.articlePanel(detail.pmid, detail.title, detail.abstract, detail.terms));
      } catch (error) {
        this.setStatus(`detail fetch failed: ${(error as Error).message}`, true);
      }
    } else {
      this.elements.detail.innerHTML = '';
      this.elements.detail.appendChild(this.termPanel(node));
    }
  }

  private articlePanel(
    pmid: string,
    title: string,
    abstract: string,
    terms: { name: string; type: string | null }[],
  ): HTMLElement {
    const panel = document.createElement('div');
    panel.className = 'detail-article';
    const heading = document.createElement('h3');
    heading.textContent = title;
    panel.appendChild(heading);
    const meta = document.createElement('p');
    meta.className = 'detail-pmid';
    meta.textContent = `PMID ${pmid}`;
    panel.appendChild(meta);
    const body = document.createElement('p');
    body.textContent = abstract;
    panel.appendChild(body);
    const list = document.createElement('ul');
    list.className = 'detail-terms';
    for (const term of terms) {
      const item = document.createElement('li');
      item.textContent = term.type ? `${term.name} (${term.type})` : term.name;
      list.appendChild(item);
    }
    panel.appendChild(list);
    return panel;
  }

  private termPanel(node: SubgraphNode): HTMLElement {
    const panel = document.createElement('div');
    panel.className = 'detail-term';
    const heading = document.createElement('h3');
    heading.textContent = node.name;
    panel.appendChild(heading);
    const meta = document.createElement('p');
    meta.textContent = node.type ? `term · ${node.type}` : 'term';
    panel.appendChild(meta);
    const list = document.createElement('ul');
    list.className = 'detail-relations';
    const names = new Map(this.state.subgraph!.nodes.map((n) => [n.id, n.name]));
    for (const edge of this.state.subgraph!.edges) {
      if (edge.head !== node.id && edge.tail !== node.id) continue;
      const item = document.createElement('li');
      item.textContent = `${names.get(edge.head)} —${edge.relation}→ ${names.get(edge.tail)}`;
      list.appendChild(item);
    }
    panel.appendChild(list);
    return panel;
  }

  /** Chip click = typing the chip text into the search bar. */
  applyRecommendation(name: string): Promise<void> {
    this.elements.searchInput.value = name;
    return this.search(name);
  }

  private renderAll(): void {
    const problems = invariantViolations(this.state);
    if (problems.length) {
      this.setStatus(`inconsistent state: ${problems.join('; ')}`, true);
      return;
    }
    if (this.state.subgraph) this.view.render(this.state.subgraph);
    this.renderChips();
    this.renderHistory();
    this.elements.detail.textContent = 'double-click a node for details';
  }

  private renderChips(): void {
    const container = this.elements.chips;
    container.innerHTML = '';
    if (!this.state.recommendations.length) {
      const placeholder = document.createElement('span');
      placeholder.className = 'chips-empty';
      placeholder.textContent = 'no recommendations yet';
      container.appendChild(placeholder);
      return;
    }
    // one list, grouped by kind: terms first, then articles
    const groups: Array<['term' | 'article', string]> = [
      ['term', 'terms'],
      ['article', 'articles'],
    ];
    for (const [kind, label] of groups) {
      const members = this.state.recommendations.filter((r) => r.kind === kind);
      if (!members.length) continue;
      const caption = document.createElement('span');
      caption.className = 'chip-group-label';
      caption.textContent = label;
      container.appendChild(caption);
      for (const rec of members) {
        const chip = document.createElement('button');
        chip.className = `chip chip-${rec.kind}`;
        chip.textContent = rec.name;
        chip.setAttribute('data-name', rec.name);
        chip.addEventListener('click', () => void this.applyRecommendation(rec.name));
        container.appendChild(chip);
      }
    }
  }

  private renderHistory(): void {
    this.elements.history.textContent = this.state.history.join(' → ');
  }

  private setStatus(message: string, isError: boolean): void {
    this.elements.statusBanner.textContent = message;
    this.elements.statusBanner.className = isError ? 'status error' : 'status';
  }
}
