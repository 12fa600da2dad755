/**
 * Figure recipes: which CSVs each figure consumes, the exact column schema
 * the primary documents for them, and how the columns map onto panels.
 */

import { CsvTable, SchemaError, column } from "./csv.js";
import { PanelOptions } from "./chart.js";

export interface FigureRecipe {
  name: string;
  /** CSV file names consumed, in panel order. */
  inputs: string[];
  /** Throws SchemaError unless the table matches the documented schema. */
  validate(table: CsvTable, input: string): void;
  /** Map the validated tables onto chart panels (axis scaling only). */
  panels(tables: CsvTable[]): PanelOptions[];
}

function requireColumns(table: CsvTable, input: string, expected: string[]): void {
  if (
    table.columns.length !== expected.length ||
    expected.some((name, i) => table.columns[i] !== name)
  ) {
    throw new SchemaError(
      `${input}: columns [${table.columns.join(", ")}] do not match the ` +
        `documented schema [${expected.join(", ")}]`,
    );
  }
}

function velocitySeries(table: CsvTable, labels?: Record<string, string>) {
  const t = column(table, table.columns[0]);
  return table.columns.slice(1).map((name) => ({
    label: labels?.[name] ?? name,
    x: t,
    y: column(table, name),
  }));
}

const fig1: FigureRecipe = {
  name: "fig1",
  inputs: ["fig1.csv"],
  validate: (table, input) =>
    requireColumns(table, input, ["t", "v_z_d1", "v_z_d2", "v_z_d4"]),
  panels: ([table]) => [
    {
      title: "Transient velocity oscillations",
      xLabel: "t / t_c",
      yLabel: "v_z / c",
      series: velocitySeries(table, {
        v_z_d1: "d = 1",
        v_z_d2: "d = 2",
        v_z_d4: "d = 4",
      }),
    },
  ],
};

const fig2: FigureRecipe = {
  name: "fig2",
  inputs: ["fig2.csv"],
  validate: (table, input) => {
    if (table.columns[0] !== "x" || table.columns.length < 3) {
      throw new SchemaError(
        `${input}: expected "x" plus at least two snapshot columns, ` +
          `found [${table.columns.join(", ")}]`,
      );
    }
    for (const name of table.columns.slice(1)) {
      if (!/^absphi_t/.test(name)) {
        throw new SchemaError(`${input}: unexpected snapshot column "${name}"`);
      }
    }
  },
  panels: ([table]) => {
    const x = column(table, "x");
    return [
      {
        title: "Packet modulus snapshots",
        xLabel: "x / lambda_c",
        yLabel: "|phi|",
        series: table.columns.slice(1).map((name, i) => ({
          label: `t = ${name.replace("absphi_t", "")}`,
          x,
          y: column(table, name),
          emphasize: i === 0, // the initial packet is drawn thick
        })),
      },
    ];
  },
};

function magneticPanel(title: string) {
  return (table: CsvTable): PanelOptions => ({
    title: `${title} (B/B_s = ${table.header.b_ratio ?? "?"})`,
    xLabel: "t / t_c",
    yLabel: "v / c",
    series: velocitySeries(table),
  });
}

const fig3: FigureRecipe = {
  name: "fig3",
  inputs: ["fig3a.csv", "fig3b.csv", "fig3c.csv"],
  validate: (table, input) => requireColumns(table, input, ["t", "v_x", "v_y"]),
  panels: (tables) => tables.map(magneticPanel("Transverse velocity")),
};

const fig4: FigureRecipe = {
  name: "fig4",
  inputs: ["fig4.csv"],
  validate: (table, input) => requireColumns(table, input, ["t", "v_x", "v_y"]),
  panels: ([table]) => [magneticPanel("Collapse and revival")(table)],
};

const fig5: FigureRecipe = {
  name: "fig5",
  inputs: ["fig5.csv"],
  validate: (table, input) => {
    if (table.columns[0] !== "t" || table.columns.length < 3) {
      throw new SchemaError(
        `${input}: expected "t" plus one column per field strength`,
      );
    }
    for (const name of table.columns.slice(1)) {
      if (!/^v_z_b/.test(name)) {
        throw new SchemaError(`${input}: unexpected column "${name}"`);
      }
    }
  },
  panels: ([table]) => [
    {
      title: "Longitudinal velocity vs field strength",
      xLabel: "t / t_c",
      yLabel: "v_z / c",
      series: velocitySeries(
        table,
        Object.fromEntries(
          table.columns
            .slice(1)
            .map((name) => [name, `B/B_s = ${name.replace("v_z_b", "")}`]),
        ),
      ),
    },
  ],
};

const fig7: FigureRecipe = {
  name: "fig7",
  inputs: ["fig7.csv"],
  validate: (table, input) =>
    requireColumns(table, input, [
      "t",
      "v1c",
      "v1osc",
      "v2c",
      "v2osc",
      "v3",
      "total",
      "pde_total",
    ]),
  panels: ([table]) => [
    {
      title: "String variance decomposition",
      xLabel: "t omega_0",
      yLabel: "variance / lambda_c^2",
      series: velocitySeries(table),
    },
  ],
};

export const RECIPES: FigureRecipe[] = [fig1, fig2, fig3, fig4, fig5, fig7];
