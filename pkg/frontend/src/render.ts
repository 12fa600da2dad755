/**
 * Drive the figure recipes: read the primary's CSVs, validate their schemas,
 * cross-check provenance digests, and emit one SVG plus one PNG per figure.
 */

import { existsSync, mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import sharp from "sharp";

import { readCsv, CsvTable } from "./csv.js";
import { renderSvg } from "./chart.js";
import { FigureRecipe, RECIPES } from "./recipes.js";

export interface RenderResult {
  figure: string;
  svgPath: string;
  pngPath: string;
  warnings: string[];
}

/** Digest disagreement between a figure's CSVs is a warning, not a failure:
 * the data may still be coherent, but provenance should be flagged. */
export function digestWarnings(tables: CsvTable[], inputs: string[]): string[] {
  const warnings: string[] = [];
  const digests = tables.map((t) => t.header.config_digest);
  digests.forEach((digest, i) => {
    if (!digest) warnings.push(`${inputs[i]}: missing config_digest header`);
  });
  const seen = new Set(digests.filter(Boolean));
  if (seen.size > 1) {
    warnings.push(
      `inputs carry mismatched config digests (${[...seen].join(", ")}); ` +
        `the CSVs may come from different runs`,
    );
  }
  return warnings;
}

export async function renderFigure(
  recipe: FigureRecipe,
  csvDir: string,
  outDir: string,
): Promise<RenderResult> {
  const tables = recipe.inputs.map((input) => {
    const table = readCsv(join(csvDir, input));
    recipe.validate(table, input);
    return table;
  });
  const warnings = digestWarnings(tables, recipe.inputs);
  const svg = renderSvg(recipe.panels(tables));
  mkdirSync(outDir, { recursive: true });
  const svgPath = join(outDir, `${recipe.name}.svg`);
  const pngPath = join(outDir, `${recipe.name}.png`);
  writeFileSync(svgPath, svg);
  await sharp(Buffer.from(svg)).png().toFile(pngPath);
  return { figure: recipe.name, svgPath, pngPath, warnings };
}

/** Render every figure whose CSVs are present in csvDir. */
export async function renderAll(
  csvDir: string,
  outDir: string,
): Promise<RenderResult[]> {
  const results: RenderResult[] = [];
  for (const recipe of RECIPES) {
    if (!recipe.inputs.every((input) => existsSync(join(csvDir, input)))) {
      continue;
    }
    results.push(await renderFigure(recipe, csvDir, outDir));
  }
  return results;
}
