/** DOM shell: builds the page and repaints it from view-models. */

import { StrategyInfo } from "./api.js";
import { RoundView, StrategyChoice } from "./model.js";
import { CellView, MarkerView, SurfaceView, cellAt, colorFor } from "./surface.js";

export interface Handlers {
  onPlay(choice: StrategyChoice): void;
  onNewSession(policy: string, fixedStrategy: string): void;
  onCellClick(cell: CellView): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class UiShell {
  private named!: HTMLSelectElement;
  private modeNamed!: HTMLInputElement;
  private modeDialed!: HTMLInputElement;
  private theta!: HTMLInputElement;
  private phi!: HTMLInputElement;
  private thetaLabel!: HTMLSpanElement;
  private phiLabel!: HTMLSpanElement;
  private playButton!: HTMLButtonElement;
  private policy!: HTMLSelectElement;
  private fixedPick!: HTMLSelectElement;
  private sessionLabel!: HTMLSpanElement;
  private status: HTMLDivElement;
  private ports: Map<string, { tile: HTMLDivElement; value: HTMLSpanElement }> = new Map();
  private payoffLine!: HTMLDivElement;
  private cumulativeLine!: HTMLDivElement;
  private historyBody!: HTMLTableSectionElement;
  private surfaceGrid!: HTMLDivElement;
  private surfaceInfo!: HTMLDivElement;

  constructor(root: HTMLElement, private readonly handlers: Handlers) {
    root.textContent = "";
    root.append(
      el("h1", "", "spin-orbit prisoner's dilemma"),
      this.buildSessionBar(),
      this.buildPlayPanel(),
      this.buildRoundPanel(),
      this.buildHistoryPanel(),
      this.buildSurfacePanel(),
    );
    this.status = el("div", "status");
    root.append(this.status);
  }

  private buildSessionBar(): HTMLElement {
    const bar = el("div", "panel session-bar");
    this.policy = el("select");
    for (const [value, label] of [
      ["nash", "opponent: nash (iZ)"],
      ["best_response", "opponent: best response"],
      ["fixed", "opponent: fixed strategy"],
    ]) {
      const opt = el("option", "", label);
      opt.value = value;
      this.policy.append(opt);
    }
    this.fixedPick = el("select");
    this.fixedPick.hidden = true;
    this.policy.addEventListener("change", () => {
      this.fixedPick.hidden = this.policy.value !== "fixed";
    });
    const start = el("button", "", "new session");
    start.addEventListener("click", () =>
      this.handlers.onNewSession(this.policy.value, this.fixedPick.value),
    );
    this.sessionLabel = el("span", "session-label", "no session");
    bar.append(this.policy, this.fixedPick, start, this.sessionLabel);
    return bar;
  }

  private buildPlayPanel(): HTMLElement {
    const panel = el("div", "panel play-panel");
    this.modeNamed = el("input");
    this.modeNamed.type = "radio";
    this.modeNamed.name = "mode";
    this.modeNamed.checked = true;
    this.modeDialed = el("input");
    this.modeDialed.type = "radio";
    this.modeDialed.name = "mode";
    this.named = el("select");

    this.theta = el("input");
    this.theta.type = "range";
    this.theta.min = "0";
    this.theta.max = "90";
    this.theta.step = "1";
    this.theta.value = "0";
    this.phi = el("input");
    this.phi.type = "range";
    this.phi.min = "0";
    this.phi.max = Math.PI.toFixed(6);
    this.phi.step = "0.001";
    this.phi.value = "0";
    this.thetaLabel = el("span", "dial-label", "0");
    this.phiLabel = el("span", "dial-label", "0");
    const syncLabels = () => {
      this.thetaLabel.textContent = this.theta.value;
      this.phiLabel.textContent = Number(this.phi.value).toFixed(3);
      this.modeDialed.checked = true;
    };
    this.theta.addEventListener("input", syncLabels);
    this.phi.addEventListener("input", syncLabels);

    this.playButton = el("button", "play-button", "play round");
    this.playButton.addEventListener("click", () => this.handlers.onPlay(this.currentChoice()));

    const namedRow = el("label", "choice-row");
    namedRow.append(this.modeNamed, el("span", "", "named move"), this.named);
    const dialedRow = el("label", "choice-row");
    dialedRow.append(
      this.modeDialed,
      el("span", "", "dial C(θ°, φ rad)"),
      this.theta,
      this.thetaLabel,
      this.phi,
      this.phiLabel,
    );
    panel.append(namedRow, dialedRow, this.playButton);
    return panel;
  }

  private buildRoundPanel(): HTMLElement {
    const panel = el("div", "panel round-panel");
    const tiles = el("div", "port-grid");
    for (const label of ["CC", "CD", "DC", "DD"]) {
      const tile = el("div", "port-tile");
      const name = el("span", "port-name", label);
      const value = el("span", "port-value", "");
      tile.append(name, value);
      tiles.append(tile);
      this.ports.set(label, { tile, value });
    }
    this.payoffLine = el("div", "payoff-line", "play a round to see payoffs");
    this.cumulativeLine = el("div", "cumulative-line", "");
    panel.append(tiles, this.payoffLine, this.cumulativeLine);
    return panel;
  }

  private buildHistoryPanel(): HTMLElement {
    const panel = el("div", "panel history-panel");
    const table = el("table", "history");
    const head = el("thead");
    const headRow = el("tr");
    for (const title of ["round", "you", "opponent", "payoffs", "cumulative"]) {
      headRow.append(el("th", "", title));
    }
    head.append(headRow);
    this.historyBody = el("tbody");
    table.append(head, this.historyBody);
    panel.append(el("h2", "", "rounds"), table);
    return panel;
  }

  private buildSurfacePanel(): HTMLElement {
    const panel = el("div", "panel surface-panel");
    this.surfaceGrid = el("div", "surface-grid");
    this.surfaceInfo = el("div", "surface-info", "click a cell to load its dial");
    panel.append(el("h2", "", "payoff surface (your payoff)"), this.surfaceGrid, this.surfaceInfo);
    return panel;
  }

  currentChoice(): StrategyChoice {
    if (this.modeNamed.checked) {
      return { kind: "named", name: this.named.value };
    }
    return { kind: "dialed", theta: Number(this.theta.value), phi: Number(this.phi.value) };
  }

  setStrategies(strategies: StrategyInfo[]): void {
    this.named.textContent = "";
    this.fixedPick.textContent = "";
    for (const s of strategies) {
      for (const select of [this.named, this.fixedPick]) {
        const opt = el("option", "", `${s.name} (${s.tag})`);
        opt.value = s.name;
        select.append(opt);
      }
    }
    this.named.value = "iZ";
    this.fixedPick.value = "iX";
  }

  setSession(label: string): void {
    this.sessionLabel.textContent = label;
    this.historyBody.textContent = "";
    this.payoffLine.textContent = "play a round to see payoffs";
    this.cumulativeLine.textContent = "";
    for (const { tile, value } of this.ports.values()) {
      tile.style.background = "rgba(255, 214, 70, 0)";
      value.textContent = "";
    }
  }

  setPending(pending: boolean): void {
    this.playButton.disabled = pending;
  }

  setDial(theta: number, phi: number): void {
    this.theta.value = String(theta);
    this.phi.value = phi.toFixed(3);
    this.thetaLabel.textContent = this.theta.value;
    this.phiLabel.textContent = Number(this.phi.value).toFixed(3);
    this.modeDialed.checked = true;
    this.modeNamed.checked = false;
  }

  showRound(view: RoundView): void {
    for (const port of view.ports) {
      const slot = this.ports.get(port.label);
      if (!slot) continue;
      slot.tile.style.background = `rgba(255, 214, 70, ${port.brightness.toFixed(3)})`;
      slot.value.textContent = port.text;
    }
    this.payoffLine.textContent = `payoffs (you / opponent): ${view.payoffText}`;
    this.cumulativeLine.textContent = `cumulative: ${view.cumulativeText}`;
    const row = el("tr");
    for (const cell of [
      String(view.round),
      view.you,
      view.opponent,
      view.payoffText,
      view.cumulativeText,
    ]) {
      row.append(el("td", "", cell));
    }
    this.historyBody.append(row);
  }

  renderSurface(view: SurfaceView, marks: MarkerView[]): void {
    this.surfaceGrid.textContent = "";
    this.surfaceGrid.style.gridTemplateColumns = `repeat(${view.t.length}, 1fr)`;
    const marked = new Set(marks.map((m) => `${m.i}:${m.j}`));
    const names = new Map(marks.map((m) => [`${m.i}:${m.j}`, m.name]));
    for (let i = view.t.length - 1; i >= 0; i--) {
      for (let j = 0; j < view.t.length; j++) {
        const cell = cellAt(view, view.t[i], view.t[j]);
        const node = el("div", "surface-cell");
        node.style.background = colorFor(cell.value, view.min, view.max);
        node.title = `t_you=${cell.tA.toFixed(2)}, t_opp=${cell.tB.toFixed(2)}: ${cell.text}`;
        if (marked.has(`${i}:${j}`)) {
          node.classList.add("marked");
          node.textContent = names.get(`${i}:${j}`) ?? "";
        }
        node.addEventListener("click", () => {
          this.surfaceInfo.textContent =
            `your payoff at (t_you=${cell.tA.toFixed(2)}, t_opp=${cell.tB.toFixed(2)}) is ${cell.text}`;
          this.handlers.onCellClick(cell);
        });
        this.surfaceGrid.append(node);
      }
    }
  }

  showError(message: string): void {
    this.status.textContent = message;
    this.status.classList.add("error");
  }

  clearError(): void {
    this.status.textContent = "";
    this.status.classList.remove("error");
  }
}
