/** Tiny software rasterizer: lines, discs, and bitmap text over RGBA. */

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font5x7.js";

export interface Color {
  r: number;
  g: number;
  b: number;
  a: number; // 0..255
}

export function parseColor(hex: string, alpha = 255): Color {
  const m = /^#([0-9a-f]{6})$/i.exec(hex);
  if (!m) throw new Error(`bad color: ${hex}`);
  const v = parseInt(m[1], 16);
  return { r: (v >> 16) & 0xff, g: (v >> 8) & 0xff, b: v & 0xff, a: alpha };
}

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8ClampedArray;

  constructor(width: number, height: number, background: Color = { r: 255, g: 255, b: 255, a: 255 }) {
    this.width = width;
    this.height = height;
    this.data = new Uint8ClampedArray(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.data[4 * i] = background.r;
      this.data[4 * i + 1] = background.g;
      this.data[4 * i + 2] = background.b;
      this.data[4 * i + 3] = background.a;
    }
  }

  blend(x: number, y: number, c: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = 4 * (y * this.width + x);
    const a = c.a / 255;
    this.data[i] = Math.round(c.r * a + this.data[i] * (1 - a));
    this.data[i + 1] = Math.round(c.g * a + this.data[i + 1] * (1 - a));
    this.data[i + 2] = Math.round(c.b * a + this.data[i + 2] * (1 - a));
    this.data[i + 3] = 255;
  }

  line(x0: number, y0: number, x1: number, y1: number, c: Color): void {
    let ax = Math.round(x0);
    let ay = Math.round(y0);
    const bx = Math.round(x1);
    const by = Math.round(y1);
    const dx = Math.abs(bx - ax);
    const dy = -Math.abs(by - ay);
    const sx = ax < bx ? 1 : -1;
    const sy = ay < by ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.blend(ax, ay, c);
      if (ax === bx && ay === by) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        ax += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ay += sy;
      }
    }
  }

  dashedLine(x0: number, y0: number, x1: number, y1: number, c: Color, on = 5, off = 4): void {
    const length = Math.hypot(x1 - x0, y1 - y0);
    const steps = Math.max(1, Math.round(length));
    let drawing = true;
    let run = 0;
    for (let s = 0; s <= steps; s++) {
      const t = s / steps;
      if (drawing) this.blend(Math.round(x0 + t * (x1 - x0)), Math.round(y0 + t * (y1 - y0)), c);
      run += 1;
      if (drawing && run >= on) {
        drawing = false;
        run = 0;
      } else if (!drawing && run >= off) {
        drawing = true;
        run = 0;
      }
    }
  }

  disc(cx: number, cy: number, radius: number, c: Color): void {
    const r2 = radius * radius;
    for (let y = Math.floor(cy - radius); y <= Math.ceil(cy + radius); y++) {
      for (let x = Math.floor(cx - radius); x <= Math.ceil(cx + radius); x++) {
        if ((x - cx) ** 2 + (y - cy) ** 2 <= r2) this.blend(x, y, c);
      }
    }
  }

  /** anchor: "start" | "middle" | "end"; rotate: 0 or -90 degrees. */
  text(text: string, x: number, y: number, c: Color, anchor = "start", scale = 1, rotate: 0 | -90 = 0): void {
    const advance = (GLYPH_WIDTH + 1) * scale;
    const width = text.length * advance - scale;
    let offset = 0;
    if (anchor === "middle") offset = -width / 2;
    if (anchor === "end") offset = -width;
    for (let idx = 0; idx < text.length; idx++) {
      const glyph = glyphFor(text[idx]);
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (glyph[gy][gx] !== "#") continue;
          for (let sy = 0; sy < scale; sy++) {
            for (let sx = 0; sx < scale; sx++) {
              const px = offset + idx * advance + gx * scale + sx;
              const py = (gy - GLYPH_HEIGHT) * scale + sy;
              if (rotate === 0) {
                this.blend(Math.round(x + px), Math.round(y + py), c);
              } else {
                this.blend(Math.round(x + py), Math.round(y - px), c);
              }
            }
          }
        }
      }
    }
  }
}
