/**
 * Render a sweep CSV from the phiwalk CLI as an SVG figure.
 *
 * Usage:
 *   node dist/plot.js <figure_kind> <input_csv> <output_image>
 *
 * figure_kind is one of delta_sweep, noise_sweep, relative_sweep,
 * distribution (hyphens accepted in place of underscores, matching the
 * phiwalk subcommand spellings). Exits 0 on success, 1 on unreadable or
 * malformed input, 2 on usage errors.
 */

import { readFile, writeFile } from "fs/promises";
import { parseSweepCsv } from "./csv";
import { FIGURE_KINDS, FigureKind, figureSvg } from "./figures";

const USAGE = `usage: plot <figure_kind> <input_csv> <output_image>
figure kinds: ${FIGURE_KINDS.join(" | ")}`;

export async function run(argv: string[]): Promise<number> {
  if (argv.length !== 3) {
    console.error(USAGE);
    return 2;
  }
  const kind = argv[0].replace(/-/g, "_");
  if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
    console.error(`error: unknown figure kind '${argv[0]}'`);
    console.error(USAGE);
    return 2;
  }
  const [, inputCsv, outputImage] = argv;
  try {
    const text = await readFile(inputCsv, "utf-8");
    const svg = figureSvg(kind as FigureKind, parseSweepCsv(text));
    await writeFile(outputImage, svg);
  } catch (err) {
    const msg = err instanceof Error ? err.message : String(err);
    console.error(`error: ${msg}`);
    return 1;
  }
  console.log(`wrote ${outputImage}`);
  return 0;
}

if (typeof require !== "undefined" && typeof module !== "undefined" && require.main === module) {
  run(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
