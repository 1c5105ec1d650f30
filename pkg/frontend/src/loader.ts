// Script entry for generated pages. Exposes the manager constructor and
// a loader that resolves once the DOM is ready, so the page tail can run
//   loadProofdeck('./').then(function () {
//     new ProofdeckManager([...ids], {});
//   });

import { ProofdeckManager, type ManagerOptions } from "./ui";

let loaderBasePath = "./";

class PageManager extends ProofdeckManager {
  constructor(ids: string[], options: ManagerOptions = {}) {
    super(ids, { base_path: loaderBasePath, ...options });
  }
}

function loadProofdeck(basePath: string): Promise<void> {
  loaderBasePath = basePath;
  if (document.readyState !== "loading") return Promise.resolve();
  return new Promise((resolve) => {
    document.addEventListener("DOMContentLoaded", () => resolve(), { once: true });
  });
}

declare global {
  interface Window {
    ProofdeckManager: typeof PageManager;
    loadProofdeck: typeof loadProofdeck;
  }
}

window.ProofdeckManager = PageManager;
window.loadProofdeck = loadProofdeck;
