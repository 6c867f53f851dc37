// Component overlays: clicking a model component highlights its cells, and
// clicking a cell lists every component it belongs to. Membership comes
// straight from the document's bitmap vectors (aligned with cube.cells).

import type { ComponentDoc, EnhancedCubeDoc, ModelDoc } from "./types.js";

export interface ComponentRef {
  model: string;
  component: string;
  score: number | null;
}

function findModel(doc: EnhancedCubeDoc, modelType: string): ModelDoc {
  const model = doc.models.find((m) => m.type === modelType);
  if (!model) {
    throw new Error(`no model of type ${modelType} in the document`);
  }
  return model;
}

function findComponent(model: ModelDoc, name: string): ComponentDoc {
  const component = model.components.find((c) => c.name === name);
  if (!component) {
    throw new Error(`model ${model.type} has no component ${name}`);
  }
  return component;
}

/** Coordinates of the cells in a bitmap component, in cube cell order. */
export function inspectComponent(
  doc: EnhancedCubeDoc,
  modelType: string,
  componentName: string,
): string[][] {
  const component = findComponent(findModel(doc, modelType), componentName);
  if (component.core_predicate !== "bitmap") {
    throw new Error(`component ${componentName} is not a cell subset`);
  }
  return doc.cube.cells
    .filter((_, i) => component.elements[i] === 1)
    .map((cell) => cell.coordinates);
}

/** Every bitmap component containing the given cell, with its score. */
export function componentsOfCell(
  doc: EnhancedCubeDoc,
  coordinates: string[],
): ComponentRef[] {
  const index = doc.cube.cells.findIndex(
    (cell) =>
      cell.coordinates.length === coordinates.length &&
      cell.coordinates.every((v, i) => v === coordinates[i]),
  );
  if (index < 0) {
    throw new Error(`no cell at (${coordinates.join(", ")})`);
  }
  const refs: ComponentRef[] = [];
  for (const model of doc.models) {
    for (const component of model.components) {
      if (
        component.core_predicate === "bitmap" &&
        component.elements[index] === 1
      ) {
        refs.push({
          model: model.type,
          component: component.name,
          score: doc.highlight?.per_component_scores[component.name] ?? null,
        });
      }
    }
  }
  return refs;
}
