/** Test scaffolding: recorded-backend fetch mock and DOM mounting. */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { ApiClient, FetchLike } from '../src/api';
import { App, AppElements } from '../src/app';

const here = dirname(fileURLToPath(import.meta.url));

interface Recorded {
  status: number;
  body: unknown;
}

const payloads: Record<string, Recorded> = JSON.parse(
  readFileSync(join(here, 'fixtures', 'payloads.json'), 'utf-8'),
);

/** Serves the recorded backend responses; remembers every URL requested. */
export function recordedFetch(): { fetchFn: FetchLike; requests: string[] } {
  const requests: string[] = [];
  const fetchFn: FetchLike = (url) => {
    requests.push(url);
    const entry = payloads[url];
    if (!entry) {
      return Promise.resolve(
        new Response(
          JSON.stringify({ http_status: 404, code: 'NOT_FOUND', message: `unrecorded ${url}` }),
          { status: 404, headers: { 'content-type': 'application/json' } },
        ),
      );
    }
    return Promise.resolve(
      new Response(JSON.stringify(entry.body), {
        status: entry.status,
        headers: { 'content-type': 'application/json' },
      }),
    );
  };
  return { fetchFn, requests };
}

export function recordedPayload<T>(path: string): T {
  const entry = payloads[path];
  if (!entry) throw new Error(`no recorded payload for ${path}`);
  return entry.body as T;
}

export function mountDom(): AppElements {
  document.body.innerHTML = `
    <input id="search-input" type="text" />
    <button id="search-button"></button>
    <div id="status"></div>
    <nav id="history"></nav>
    <svg id="graph" width="800" height="520" xmlns="http://www.w3.org/2000/svg"></svg>
    <div id="chips"></div>
    <aside id="detail"></aside>
  `;
  return {
    searchInput: document.getElementById('search-input') as HTMLInputElement,
    searchButton: document.getElementById('search-button')!,
    statusBanner: document.getElementById('status')!,
    chips: document.getElementById('chips')!,
    history: document.getElementById('history')!,
    detail: document.getElementById('detail')!,
    svg: document.getElementById('graph') as unknown as SVGSVGElement,
  };
}

export function makeApp(): { app: App; elements: AppElements; requests: string[] } {
  const elements = mountDom();
  const { fetchFn, requests } = recordedFetch();
  const app = new App(new ApiClient('', fetchFn), elements);
  return { app, elements, requests };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
