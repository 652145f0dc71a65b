import init, { analyze_word, generator_palindromes, closure_check, prefix } from "./pkg/palwords_web.js";

const show = (id, render) => {
  const out = document.getElementById(id);
  try {
    out.className = "";
    out.textContent = render();
  } catch (e) {
    out.className = "error";
    out.textContent = e.message ?? String(e);
  }
};

const word = (w) => (w === "" ? "ε" : w);

const describeReport = (r) =>
  [
    `length ${r.word_length}, ${r.count} palindromes (ε included), richness defect ${r.richness_defect}`,
    `longest: ${word(r.longest)} (${r.longest.length})`,
    `palindromes: ${r.palindromes.map(word).join(" ")}`,
  ].join("\n");

const form = (id, handler) =>
  document.getElementById(id).addEventListener("submit", (event) => {
    event.preventDefault();
    handler(new FormData(event.target));
  });

await init();

form("word-form", (data) =>
  show("word-out", () => {
    const result = JSON.parse(analyze_word(data.get("word"), data.get("anchor")));
    let text = describeReport(result.report);
    if (result.anchor) {
      text += `\ncomplete first returns to ${result.anchor}: ${result.returns.join(" ") || "none"}`;
    }
    return text;
  })
);

form("gen-form", (data) =>
  show("gen-out", () => {
    const gen = data.get("gen");
    const horizon = Number(data.get("horizon"));
    const result = JSON.parse(generator_palindromes(gen, horizon));
    const start = JSON.parse(prefix(gen, 48));
    if (horizon === 0) {
      const note = result.stability === "stable"
        ? `stable: last new palindrome at ${result.stable_horizon}, scanned ${result.checked_horizon}`
        : `still growing at ${result.checked_horizon}`;
      return `${start}...\n${note}\n${describeReport(result.report)}`;
    }
    return `${start}...\n${describeReport(result)}`;
  })
);

form("closure-form", (data) =>
  show("closure-out", () => {
    const r = JSON.parse(closure_check(data.get("gen"), Number(data.get("k")), Number(data.get("horizon"))));
    if (r.witness_missing.length === 0) {
      return `no missing reversal among factors of length 1..${r.horizon_k} (horizon ${r.horizon})`;
    }
    return [
      `closed up to length ${r.closed_up_to}; missing reversals:`,
      ...r.witness_missing.map((m) => `  ${m.factor} (no ${m.reversal})`),
    ].join("\n");
  })
);
