/** DOM wiring for the what-if planner. */

import { ApiClient } from './api';
import { PlannerSession, type SessionState } from './session';
import { exportCsv, projectionRows, safeMaxView, zoneStrip } from './view';

const METHODS = ['rolling_coupled', 'rolling_uncoupled', 'ewma_coupled', 'ewma_uncoupled'];
const DAY_NAMES = ['Mon', 'Tue', 'Wed', 'Thu', 'Fri', 'Sat', 'Sun'];

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

function numberInput(value: number, onChange: (v: number) => void): HTMLInputElement {
  const input = el('input');
  input.type = 'number';
  input.min = '0';
  input.step = 'any';
  input.value = String(value);
  input.addEventListener('change', () => {
    const v = Number(input.value);
    if (Number.isFinite(v) && v >= 0) onChange(v);
  });
  return input;
}

export function mount(root: HTMLElement, session: PlannerSession): void {
  root.innerHTML = '';

  const banner = el('div', 'banner hidden');
  const form = el('div', 'panel form');
  const readout = el('div', 'panel readout');
  const strip = el('div', 'panel zone-strip');
  const table = el('div', 'panel projection');
  const compare = el('div', 'panel compare');
  root.append(banner, form, readout, strip, table, compare);

  // --- history entry (weekly totals, expanded to equal daily loads) ---
  const historyBox = el('fieldset');
  historyBox.append(el('legend', undefined, 'Recent weekly loads (oldest first)'));
  const weeklyInputs: HTMLInputElement[] = [];
  const weeklyRow = el('div', 'row');
  for (let i = 0; i < 4; i += 1) {
    const input = numberInput(10, () => {
      void session.setWeeklyTotals(weeklyInputs.map((w) => Number(w.value)));
    });
    weeklyInputs.push(input);
    weeklyRow.append(input);
  }
  historyBox.append(
    weeklyRow,
    el('p', 'note', 'Weekly entries are spread evenly over the days of each week.'),
  );
  form.append(historyBox);

  // --- method and cap ---
  const controls = el('div', 'row');
  const methodSelect = el('select');
  for (const method of METHODS) {
    const option = el('option', undefined, method);
    option.value = method;
    methodSelect.append(option);
  }
  methodSelect.addEventListener('change', () => void session.setMethod(methodSelect.value));

  const couplingSelect = el('select');
  for (const mode of ['coupled', 'uncoupled']) {
    const option = el('option', undefined, mode);
    option.value = mode;
    couplingSelect.append(option);
  }
  couplingSelect.addEventListener('change', () => {
    void session.setCoupling(couplingSelect.value as 'coupled' | 'uncoupled');
  });

  const capInput = numberInput(1.3, (v) => void session.setRatioCap(v));
  controls.append(
    el('label', undefined, 'method'), methodSelect,
    el('label', undefined, 'coupling'), couplingSelect,
    el('label', undefined, 'ratio cap'), capInput,
  );
  form.append(controls);

  // --- plan cells ---
  const planBox = el('fieldset');
  planBox.append(el('legend', undefined, "Next week's plan (per day)"));
  const planRow = el('div', 'row plan-cells');
  const planInputs: HTMLInputElement[] = [];
  DAY_NAMES.forEach((name, i) => {
    const wrap = el('div', 'cell');
    wrap.append(el('span', 'day', name));
    const input = numberInput(10 / 7, (v) => void session.setPlanCell(i, v));
    planInputs.push(input);
    wrap.append(input);
    planRow.append(wrap);
  });
  planBox.append(planRow);
  form.append(planBox);

  const exportButton = el('button', undefined, 'Export projection CSV');
  exportButton.addEventListener('click', () => {
    const state = session.snapshot();
    if (!state.projection) return;
    const blob = new Blob([exportCsv(state.projection.points)], { type: 'text/csv' });
    const link = el('a');
    link.href = URL.createObjectURL(blob);
    link.download = 'projection.csv';
    link.click();
    URL.revokeObjectURL(link.href);
  });
  form.append(exportButton);

  const compareButton = el('button', undefined, 'Compare methods');
  compareButton.addEventListener('click', () => {
    void session.compareMethods(METHODS).then((results) => {
      compare.innerHTML = '';
      compare.append(el('h3', undefined, 'Same plan under each method'));
      for (const [method, response] of results) {
        const block = el('div', 'compare-block');
        block.append(el('h4', undefined, method));
        block.append(renderStrip(zoneStrip(response.points)));
        compare.append(block);
      }
    });
  });
  form.append(compareButton);

  function renderStrip(cells: ReturnType<typeof zoneStrip>): HTMLElement {
    const box = el('div', 'strip');
    for (const cell of cells) {
      const chip = el('span', `chip zone-${cell.zone.toLowerCase()}`, cell.zone);
      chip.title = cell.date + (cell.converged ? '' : ' (unconverged)');
      if (!cell.defined) chip.classList.add('undefined');
      if (!cell.converged) chip.classList.add('unconverged');
      box.append(chip);
    }
    return box;
  }

  function render(state: SessionState): void {
    banner.textContent = state.error ? `service error: ${state.error}` : '';
    banner.classList.toggle('hidden', !state.error);

    const safe = safeMaxView(state.safeMax);
    readout.innerHTML = '';
    readout.append(
      el('h3', undefined, 'Max safe acute load'),
      el('div', 'safe-max' + (state.stale ? ' stale' : ''), safe.text),
      el('p', 'note', safe.detail + (state.stale ? ' (stale)' : '')),
    );

    strip.innerHTML = '';
    strip.append(el('h3', undefined, 'Projected zones'));
    if (state.projection) {
      strip.append(renderStrip(zoneStrip(state.projection.points)));
      if (state.stale) strip.append(el('p', 'note', 'stale result'));
    }

    table.innerHTML = '';
    table.append(el('h3', undefined, 'Projection'));
    if (state.projection) {
      const grid = el('table');
      const head = el('tr');
      for (const column of ['date', 'acute', 'chronic', 'ratio', 'zone']) {
        head.append(el('th', undefined, column));
      }
      grid.append(head);
      for (const row of projectionRows(state.projection.points)) {
        const tr = el('tr');
        tr.append(
          el('td', undefined, row.date),
          el('td', undefined, String(row.acute)),
          el('td', undefined, String(row.chronic)),
          el('td', row.ratio === null ? 'undefined' : '', row.ratioText),
          el('td', undefined, row.zone),
        );
        grid.append(tr);
      }
      table.append(grid);
    }
  }

  session.subscribe(render);
  render(session.snapshot());
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  const session = new PlannerSession(new ApiClient());
  void session.init();
  mount(document.getElementById('app') as HTMLElement, session);
}
