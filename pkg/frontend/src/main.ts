import { ApiClient, resolveApiBase } from './api';
import { App, AppElements } from './app';

function mount(): void {
  const elements: AppElements = {
    searchInput: document.getElementById('search-input') as HTMLInputElement,
    searchButton: document.getElementById('search-button')!,
    statusBanner: document.getElementById('status')!,
    chips: document.getElementById('chips')!,
    history: document.getElementById('history')!,
    detail: document.getElementById('detail')!,
    svg: document.getElementById('graph') as unknown as SVGSVGElement,
  };
  const app = new App(new ApiClient(resolveApiBase(window)), elements);
  (window as Window & { litkgApp?: App }).litkgApp = app;
}

if (document.readyState === 'loading') {
  document.addEventListener('DOMContentLoaded', mount);
} else {
  mount();
}
