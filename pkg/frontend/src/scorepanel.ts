/** Render the seven-category score panel with the consistency verdict and
 * a Submit button per category (submitting a non-top category is allowed;
 * the clinician has the last word). */

import type { ScorePanelState } from "./state.js";

export function renderScorePanel(panel: ScorePanelState): string {
  const verdictClass =
    panel.status === "consistent"
      ? "verdict ok"
      : panel.status === "inconsistent"
        ? "verdict warn"
        : "verdict neutral";
  const verdictText =
    panel.status === "consistent"
      ? `Reported category ${panel.reported} matches the inferred category.`
      : panel.status === "inconsistent"
        ? `Reported category ${panel.reported} does not match the inferred category ${panel.inferred}.`
        : "The report carries no category; review the scores and submit one.";
  const rows = panel.rows
    .map((row) => {
      const classes = ["score-row"];
      if (row.inferred) classes.push("inferred");
      if (panel.reported === row.category) classes.push("reported");
      const emphasized = row.inferred ? " autofocus" : "";
      return (
        `<tr class="${classes.join(" ")}" data-category="${row.category}">` +
        `<td class="category">BI-RADS ${row.category}</td>` +
        `<td class="percent">${row.percent}%</td>` +
        `<td><button class="submit" data-category="${row.category}"${emphasized}>` +
        `Submit ${row.category}</button></td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<p class="${verdictClass}" data-status="${panel.status}">${verdictText}</p>` +
    `<table class="scores"><tbody>${rows}</tbody></table>`
  );
}
