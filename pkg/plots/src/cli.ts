/**
 * Standalone renderer: latgauss-plot --input sweep.csv --output figure.svg
 *                                    [--n 500] [--series classic,improved_sandwich]
 */

import { parseArgs } from "node:util";

import { render, SeriesName, SERIES_NAMES } from "./render.js";

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        input: { type: "string" },
        output: { type: "string" },
        n: { type: "string" },
        series: { type: "string", default: "classic,improved,improved_sandwich" },
      },
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  const { input, output, n, series } = parsed.values;
  if (!input || !output) {
    console.error("usage: latgauss-plot --input sweep.csv --output figure.svg [--n N] [--series a,b]");
    return 1;
  }
  let nFilter: number | undefined;
  if (n !== undefined) {
    nFilter = Number(n);
    if (!Number.isInteger(nFilter) || nFilter < 1) {
      console.error(`error: --n must be a positive integer, got "${n}"`);
      return 1;
    }
  }
  const names = series!.split(",").map((s) => s.trim()).filter((s) => s !== "");
  try {
    const result = render({
      inputCsv: input,
      outputImage: output,
      nFilter,
      series: names as SeriesName[],
    });
    const counts = Object.entries(result.pointCounts)
      .map(([name, count]) => `${name}=${count}`)
      .join(" ");
    console.log(`wrote ${output} (${counts})`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(`known series: ${SERIES_NAMES.join(", ")}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
