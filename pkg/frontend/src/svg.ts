/** Deterministic SVG rendering of a figure model. */

import { FigureModel, colorFor } from "./figure.js";
import { Layout, computeLayout } from "./layout.js";

const POINT_RADIUS = 1.6;

function num(value: number): string {
  return Number(value.toFixed(2)).toString();
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderSvg(model: FigureModel, layout?: Layout): string {
  const l = layout ?? computeLayout(model);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${l.width}" height="${l.height}" ` +
    `viewBox="0 0 ${l.width} ${l.height}" font-family="monospace" font-size="12">`,
  );
  parts.push(`<rect width="${l.width}" height="${l.height}" fill="white"/>`);
  parts.push(`<text x="${num((l.plot.left + l.plot.right) / 2)}" y="20" text-anchor="middle">${esc(model.title)}</text>`);

  // axes frame
  parts.push(
    `<rect x="${l.plot.left}" y="${l.plot.top}" width="${l.plot.right - l.plot.left}" ` +
    `height="${l.plot.bottom - l.plot.top}" fill="none" stroke="black"/>`,
  );
  for (const tick of l.xTicks) {
    const x = num(l.mapX(tick.value));
    parts.push(`<line x1="${x}" y1="${l.plot.bottom}" x2="${x}" y2="${l.plot.bottom + 4}" stroke="black"/>`);
    parts.push(`<text x="${x}" y="${l.plot.bottom + 18}" text-anchor="middle">${esc(tick.label)}</text>`);
  }
  for (const tick of l.yTicks) {
    const y = num(l.mapY(tick.value));
    parts.push(`<line x1="${l.plot.left - 4}" y1="${y}" x2="${l.plot.left}" y2="${y}" stroke="black"/>`);
    parts.push(`<text x="${l.plot.left - 8}" y="${Number(y) + 4}" text-anchor="end">${esc(tick.label)}</text>`);
  }
  parts.push(
    `<text x="${num((l.plot.left + l.plot.right) / 2)}" y="${l.height - 12}" text-anchor="middle">${esc(model.xLabel)}</text>`,
  );
  parts.push(
    `<text x="18" y="${num((l.plot.top + l.plot.bottom) / 2)}" text-anchor="middle" ` +
    `transform="rotate(-90 18 ${num((l.plot.top + l.plot.bottom) / 2)})">${esc(model.yLabel)}</text>`,
  );

  for (const ref of model.refLines) {
    const y = num(l.mapY(ref.y));
    parts.push(
      `<line x1="${l.plot.left}" y1="${y}" x2="${l.plot.right}" y2="${y}" ` +
      `stroke="#888888" stroke-dasharray="5,4"/>`,
    );
  }

  parts.push(`<g class="data-points">`);
  for (const p of model.points) {
    parts.push(
      `<circle cx="${num(l.mapX(p.x))}" cy="${num(l.mapY(p.y))}" r="${POINT_RADIUS}" ` +
      `fill="${colorFor(p.key)}" fill-opacity="0.55"/>`,
    );
  }
  parts.push(`</g>`);

  for (const line of model.lines) {
    const pts = line.points.map((p) => `${num(l.mapX(p.x))},${num(l.mapY(p.y))}`).join(" ");
    parts.push(`<polyline points="${pts}" fill="none" stroke="${colorFor(line.key)}" stroke-width="1.5"/>`);
  }

  // legend
  let ly = l.plot.top + 8;
  const lx = l.plot.right + 12;
  for (const line of model.lines) {
    parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 18}" y2="${ly}" stroke="${colorFor(line.key)}" stroke-width="2"/>`);
    parts.push(`<text x="${lx + 24}" y="${ly + 4}">${esc(line.label)}</text>`);
    ly += 18;
  }
  for (const ref of model.refLines) {
    parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 18}" y2="${ly}" stroke="#888888" stroke-dasharray="5,4"/>`);
    parts.push(`<text x="${lx + 24}" y="${ly + 4}">${esc(ref.label)}</text>`);
    ly += 18;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
