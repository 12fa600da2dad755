#!/usr/bin/env node
/**
 * render_figures <csv-dir> <out-dir>
 *
 * Renders every recognized figure CSV set in <csv-dir> to SVG + PNG pairs
 * in <out-dir>. Exits nonzero on schema errors or when nothing renders.
 */

import { renderAll } from "./render.js";

async function main(): Promise<number> {
  const [csvDir, outDir] = process.argv.slice(2);
  if (!csvDir || !outDir) {
    console.error("usage: render_figures <csv-dir> <out-dir>");
    return 2;
  }
  const results = await renderAll(csvDir, outDir);
  if (results.length === 0) {
    console.error(`no figure CSVs found in ${csvDir}`);
    return 1;
  }
  for (const result of results) {
    for (const warning of result.warnings) {
      console.warn(`warning: ${warning}`);
    }
    console.log(`rendered ${result.figure}: ${result.svgPath}, ${result.pngPath}`);
  }
  return 0;
}

main().then(
  (code) => process.exit(code),
  (error) => {
    console.error(`error: ${error instanceof Error ? error.message : error}`);
    process.exit(1);
  },
);
