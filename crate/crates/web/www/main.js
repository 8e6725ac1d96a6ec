import init, { starFlat, runReport } from "./pkg/fedosov_web.js";

const presets = {
  rotation: {
    dim: 2, order: 3,
    action: { fields: [["-x2", "x1"]] },
    C: [{ nu_power: 1, coeffs: { "1": "-x2", "2": "x1" } }],
    compare: { J: ["-(x1^2 + x2^2)/2 + nu"] },
  },
  "translation with Omega": {
    dim: 2, order: 3,
    Omega: [{ nu_power: 1, coeffs: { "1,2": "1" } }],
    action: { fields: [["1", "0"]] },
    C: [{ nu_power: 1, coeffs: { "1": "-x2" } }],
    compare: { Omega: [] },
  },
  "two translations": {
    dim: 2, order: 2,
    action: { fields: [["1", "0"], ["0", "1"]] },
  },
};

const $ = (id) => document.getElementById(id);
const out = $("output");

function show(fn) {
  try {
    out.className = "";
    const t0 = performance.now();
    const text = fn();
    out.textContent = text + `\n(${(performance.now() - t0).toFixed(0)} ms)`;
  } catch (e) {
    out.className = "error";
    out.textContent = String(e.message ?? e);
  }
}

function loadPreset() {
  $("config").value = JSON.stringify(presets[$("preset").value], null, 2);
}

await init();
for (const name of Object.keys(presets)) {
  $("preset").add(new Option(name, name));
}
$("preset").onchange = loadPreset;
loadPreset();
out.textContent = "ready";

$("star-run").onclick = () =>
  show(() => starFlat($("star-f").value, $("star-g").value, Number($("star-order").value), $("star-c").value));
$("config-run").onclick = () => show(() => runReport($("command").value, $("config").value));
