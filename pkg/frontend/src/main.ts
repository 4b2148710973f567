import { ApiClient } from './api.js';
import { ServerMirror } from './app.js';
import { ChatPanel } from './chat.js';
import { RunControls } from './controls.js';
import { renderSceneView } from './renderer.js';
import { EventEnvelope, SchemaMismatch } from './types.js';
import { defaultView, panBy, zoomAt, ViewState } from './view.js';

const api = new ApiClient('');
const mirror = new ServerMirror(api);
const chat = new ChatPanel(api, window.localStorage);
const controls = new RunControls(api);
let view: ViewState = defaultView();

const canvas = document.getElementById('map') as HTMLCanvasElement;
const banner = document.getElementById('banner') as HTMLDivElement;
const historyEl = document.getElementById('history') as HTMLDivElement;
const inputEl = document.getElementById('instruction') as HTMLInputElement;
const sendBtn = document.getElementById('send') as HTMLButtonElement;
const playBtn = document.getElementById('play') as HTMLButtonElement;
const pauseBtn = document.getElementById('pause') as HTMLButtonElement;
const stepBtn = document.getElementById('step') as HTMLButtonElement;
const stepCount = document.getElementById('step-count') as HTMLInputElement;
const hud = document.getElementById('hud') as HTMLDivElement;

function showBanner(text: string): void {
  banner.textContent = text;
  banner.style.display = text ? 'block' : 'none';
}

// -- rendering, coalesced to one redraw per animation frame -------------------

let redrawQueued = false;

function queueRedraw(): void {
  if (redrawQueued) return;
  redrawQueued = true;
  requestAnimationFrame(() => {
    redrawQueued = false;
    redraw();
  });
}

function redraw(): void {
  if (!mirror.scene) return;
  const ctx = canvas.getContext('2d');
  if (!ctx) return;
  try {
    const info = renderSceneView(
      mirror.scene,
      mirror.trajectory,
      view,
      ctx,
      { width: canvas.width, height: canvas.height },
    );
    hud.textContent =
      `frame ${controls.frame}` +
      ` | depth z=${info.agentDepth.toFixed(2)} m` +
      ` | objects ${info.glyphCount}` +
      (controls.halted ? ' | halted' : controls.playing ? ' | playing' : ' | paused') +
      (controls.notice ? ` | ${controls.notice}` : '');
  } catch (failure) {
    if (failure instanceof SchemaMismatch) showBanner(failure.message);
    else showBanner(`render failed: ${String(failure)}`);
  }
}

// -- chat panel ----------------------------------------------------------------

function renderHistory(): void {
  historyEl.innerHTML = '';
  for (const entry of chat.history.slice(-20)) {
    const item = document.createElement('div');
    item.className = `entry ${entry.status}`;
    const script = entry.source ? `<pre>${escapeHtml(entry.source)}</pre>` : '';
    const findings = entry.findings.length
      ? `<ul>${entry.findings.map((f) => `<li>${escapeHtml(f)}</li>`).join('')}</ul>`
      : '';
    const retry =
      entry.status === 'network_error'
        ? '<button class="retry">retry</button>'
        : '';
    item.innerHTML =
      `<div class="said">&gt; ${escapeHtml(entry.text)}</div>` +
      `<div class="status">${entry.status}</div>` +
      script +
      findings +
      (entry.error ? `<div class="error">${escapeHtml(entry.error)}</div>` : '') +
      retry;
    item.querySelector('.retry')?.addEventListener('click', () => {
      void chat.retryLast()?.then(afterInstruction);
    });
    historyEl.appendChild(item);
  }
  historyEl.scrollTop = historyEl.scrollHeight;
}

function escapeHtml(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

function afterInstruction(): void {
  renderHistory();
  void mirror.resync().then(queueRedraw);
}

function syncSubmitEnabled(): void {
  sendBtn.disabled = !chat.canSubmit(inputEl.value);
}

sendBtn.addEventListener('click', () => {
  const text = inputEl.value;
  if (!chat.canSubmit(text)) return;
  inputEl.value = '';
  syncSubmitEnabled();
  void chat.submit(text).then(afterInstruction);
});
inputEl.addEventListener('input', syncSubmitEnabled);
inputEl.addEventListener('keydown', (event) => {
  if (event.key === 'Enter') sendBtn.click();
});
syncSubmitEnabled();

// -- run controls -----------------------------------------------------------------

playBtn.addEventListener('click', () => void controls.play().then(queueRedraw));
pauseBtn.addEventListener('click', () => void controls.pause().then(queueRedraw));
stepBtn.addEventListener('click', () => {
  const n = Math.max(1, Number(stepCount.value) || 1);
  void controls.step(n).then(() => void mirror.resync().then(queueRedraw));
});

// -- pan & zoom ---------------------------------------------------------------------

let dragging = false;
let lastX = 0;
let lastY = 0;

canvas.addEventListener('pointerdown', (event) => {
  dragging = true;
  lastX = event.offsetX;
  lastY = event.offsetY;
  canvas.setPointerCapture(event.pointerId);
});
canvas.addEventListener('pointermove', (event) => {
  if (!dragging) return;
  view = panBy(view, event.offsetX - lastX, event.offsetY - lastY);
  lastX = event.offsetX;
  lastY = event.offsetY;
  queueRedraw();
});
canvas.addEventListener('pointerup', () => {
  dragging = false;
});
canvas.addEventListener('wheel', (event) => {
  event.preventDefault();
  const factor = event.deltaY < 0 ? 1.2 : 1 / 1.2;
  view = zoomAt(
    view,
    { width: canvas.width, height: canvas.height },
    factor,
    event.offsetX,
    event.offsetY,
  );
  queueRedraw();
});

// -- event stream --------------------------------------------------------------------

function connectEvents(): void {
  const source = new EventSource('/api/events');
  source.onmessage = (message) => {
    const envelope = JSON.parse(message.data) as EventEnvelope;
    controls.applyEvent(envelope);
    if (!mirror.applyEnvelope(envelope)) {
      void mirror.resync().then(queueRedraw);
    } else {
      queueRedraw();
    }
  };
  source.onerror = () => {
    mirror.markStreamDropped();
    showBanner('event stream dropped; resyncing');
    source.close();
    setTimeout(() => {
      void mirror.resync().then(() => {
        showBanner('');
        queueRedraw();
      });
      connectEvents();
    }, 1000);
  };
}

// -- boot ------------------------------------------------------------------------------

void (async () => {
  try {
    await mirror.resync();
    const status = await api.status();
    controls.frame = status.frame;
    controls.playing = status.playing;
    controls.halted = status.halted;
    renderHistory();
    queueRedraw();
    connectEvents();
  } catch (failure) {
    showBanner(`cannot reach the simulation service: ${String(failure)}`);
  }
})();
