import { fetchBundle } from "./api.js";
import { Dashboard } from "./dashboard.js";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) return;
  const match = window.location.pathname.match(/\/annotate\/([A-Za-z0-9_-]+)/);
  if (!match) {
    root.textContent = "No session token in the URL.";
    return;
  }
  try {
    const bundle = await fetchBundle("", match[1]);
    new Dashboard(root, bundle);
  } catch (err) {
    root.textContent = `Could not load this session: ${String(err)}`;
  }
}

void boot();
