/** View state and its pure transitions.
 *
 * The rendered UI is a function of this state plus the viewport; replaying
 * the same query history always reproduces the same data state.  History is
 * append-only within a session, and the selected entity is always a node of
 * the displayed subgraph.
 */

import type { Recommendation, SubgraphPayload } from './types';

export interface ViewState {
  currentQuery: string;
  subgraph: SubgraphPayload | null;
  recommendations: Recommendation[];
  selectedEntity: number | null;
  history: string[];
}

export function initialState(): ViewState {
  return {
    currentQuery: '',
    subgraph: null,
    recommendations: [],
    selectedEntity: null,
    history: [],
  };
}

/** A successful search replaces the data and appends to history. */
export function withSearchResult(
  state: ViewState,
  query: string,
  subgraph: SubgraphPayload,
  recommendations: Recommendation[],
): ViewState {
  return {
    currentQuery: query,
    subgraph,
    recommendations,
    selectedEntity: null,
    history: [...state.history, query],
  };
}

/** A failed search keeps previous data; only the attempt is recorded. */
export function withSearchFailure(state: ViewState, query: string): ViewState {
  return { ...state, history: [...state.history, query] };
}

export function withSelection(state: ViewState, entityId: number | null): ViewState {
  if (entityId !== null) {
    const known = state.subgraph?.nodes.some((n) => n.id === entityId) ?? false;
    if (!known) return state;
  }
  return { ...state, selectedEntity: entityId };
}

export function invariantViolations(state: ViewState): string[] {
  const problems: string[] = [];
  if (state.selectedEntity !== null) {
    const known = state.subgraph?.nodes.some((n) => n.id === state.selectedEntity);
    if (!known) problems.push('selected entity is not in the displayed subgraph');
  }
  if (state.subgraph) {
    const ids = new Set(state.subgraph.nodes.map((n) => n.id));
    for (const edge of state.subgraph.edges) {
      if (!ids.has(edge.head) || !ids.has(edge.tail)) {
        problems.push(`edge ${edge.head}->${edge.tail} dangles`);
      }
    }
  }
  return problems;
}
