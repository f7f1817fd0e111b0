import { App } from "./app.js";

function boot(): void {
  const mount = document.getElementById("root");
  if (!mount) {
    throw new Error("missing #root mount point");
  }
  void new App(mount).start();
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", boot);
} else {
  boot();
}
