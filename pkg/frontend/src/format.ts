// Display formatting: bars show one decimal place, full precision lives in
// the hover title.

export function percent1(p: number): string {
  return `${(p * 100).toFixed(1)}%`;
}

export function fullPrecision(p: number): string {
  return p.toPrecision(15);
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * One horizontal posterior bar. The width style carries the same 1-decimal
 * rounding as the label so bar and number never disagree.
 */
export function posteriorBar(label: string, p: number): string {
  const pct = percent1(p);
  return (
    `<div class="bar-row" title="${fullPrecision(p)}">` +
    `<span class="bar-label">${escapeHtml(label)}</span>` +
    `<span class="bar-track"><span class="bar-fill" style="width:${pct}"></span></span>` +
    `<span class="bar-value">${pct}</span>` +
    `</div>`
  );
}
