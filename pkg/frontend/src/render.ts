/** Raster rendering of a figure model, sharing the SVG renderer's layout. */

import { FigureModel, colorFor } from "./figure.js";
import { Layout, computeLayout } from "./layout.js";
import { encodePng } from "./png.js";
import { Raster, parseColor } from "./raster.js";

const BLACK = parseColor("#000000");
const GREY = parseColor("#888888");
const POINT_RADIUS = 1.6;

export function renderPng(model: FigureModel, layout?: Layout): Buffer {
  const l = layout ?? computeLayout(model);
  const img = new Raster(l.width, l.height);

  img.text(model.title, (l.plot.left + l.plot.right) / 2, 24, BLACK, "middle");

  // frame
  img.line(l.plot.left, l.plot.top, l.plot.right, l.plot.top, BLACK);
  img.line(l.plot.left, l.plot.bottom, l.plot.right, l.plot.bottom, BLACK);
  img.line(l.plot.left, l.plot.top, l.plot.left, l.plot.bottom, BLACK);
  img.line(l.plot.right, l.plot.top, l.plot.right, l.plot.bottom, BLACK);

  for (const tick of l.xTicks) {
    const x = l.mapX(tick.value);
    img.line(x, l.plot.bottom, x, l.plot.bottom + 4, BLACK);
    img.text(tick.label, x, l.plot.bottom + 16, BLACK, "middle");
  }
  for (const tick of l.yTicks) {
    const y = l.mapY(tick.value);
    img.line(l.plot.left - 4, y, l.plot.left, y, BLACK);
    img.text(tick.label, l.plot.left - 8, y + 4, BLACK, "end");
  }
  img.text(model.xLabel, (l.plot.left + l.plot.right) / 2, l.height - 10, BLACK, "middle");
  img.text(model.yLabel, 20, (l.plot.top + l.plot.bottom) / 2, BLACK, "middle", 1, -90);

  for (const ref of model.refLines) {
    const y = l.mapY(ref.y);
    img.dashedLine(l.plot.left, y, l.plot.right, y, GREY);
  }

  for (const p of model.points) {
    img.disc(l.mapX(p.x), l.mapY(p.y), POINT_RADIUS, parseColor(colorFor(p.key), 140));
  }

  for (const line of model.lines) {
    for (let i = 1; i < line.points.length; i++) {
      img.line(
        l.mapX(line.points[i - 1].x), l.mapY(line.points[i - 1].y),
        l.mapX(line.points[i].x), l.mapY(line.points[i].y),
        parseColor(colorFor(line.key)),
      );
    }
  }

  let ly = l.plot.top + 8;
  const lx = l.plot.right + 12;
  for (const line of model.lines) {
    img.line(lx, ly, lx + 18, ly, parseColor(colorFor(line.key)));
    img.text(line.label, lx + 24, ly + 4, BLACK);
    ly += 16;
  }
  for (const ref of model.refLines) {
    img.dashedLine(lx, ly, lx + 18, ly, GREY);
    img.text(ref.label, lx + 24, ly + 4, BLACK);
    ly += 16;
  }

  return encodePng(l.width, l.height, img.data);
}
