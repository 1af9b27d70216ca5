import { ApiClient } from "./api.js";
import { GameSession, StrategyChoice } from "./model.js";
import { dialFor, markers, surfaceView } from "./surface.js";
import { UiShell } from "./ui.js";

const SURFACE_POINTS_PER_SEGMENT = 21;

async function boot(): Promise<void> {
  const api = new ApiClient("");
  const session = new GameSession(api);

  const ui = new UiShell(document.getElementById("app") as HTMLElement, {
    onPlay(choice: StrategyChoice) {
      if (session.pending) return;
      ui.clearError();
      ui.setPending(true);
      session
        .playRound(choice)
        .then((view) => ui.showRound(view))
        .catch((err) => ui.showError(String(err.message ?? err)))
        .finally(() => ui.setPending(false));
    },
    onNewSession(policy: string, fixedStrategy: string) {
      ui.clearError();
      session
        .start(policy, policy === "fixed" ? fixedStrategy : undefined)
        .then(() => ui.setSession(`session ${session.id?.slice(0, 8)} (${policy})`))
        .catch((err) => ui.showError(String(err.message ?? err)));
    },
    onCellClick(cell) {
      const dial = dialFor(cell.tA);
      ui.setDial(dial.theta, dial.phi);
    },
  });

  const strategies = await api.strategies();
  ui.setStrategies(strategies);

  await session.start("nash");
  ui.setSession(`session ${session.id?.slice(0, 8)} (nash)`);

  const sweep = surfaceView(await api.sweep(SURFACE_POINTS_PER_SEGMENT));
  ui.renderSurface(sweep, markers(sweep, strategies));
}

boot().catch((err) => {
  const root = document.getElementById("app");
  if (root) root.textContent = `failed to reach the game service: ${err}`;
});
