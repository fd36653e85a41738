/** In-memory meaning graphs and their PENMAN text form. */

export interface AmrNode {
  variable: string;
  concept: string;
  /** outgoing relations in insertion order */
  relations: Array<{ role: string; target: AmrNode | string; reentrant?: boolean }>;
}

export class GraphBuilder {
  private used = new Map<string, number>();
  private byConcept = new Map<string, AmrNode>();

  node(concept: string): AmrNode {
    const existing = this.byConcept.get(concept);
    if (existing) return existing;
    const letter = /^[a-z]/.test(concept) ? concept[0] : "x";
    const count = (this.used.get(letter) ?? 0) + 1;
    this.used.set(letter, count);
    const variable = count === 1 ? letter : `${letter}${count}`;
    const node: AmrNode = { variable, concept, relations: [] };
    this.byConcept.set(concept, node);
    return node;
  }

  isKnown(concept: string): boolean {
    return this.byConcept.has(concept);
  }
}

/** Serialize from the root; repeated nodes become bare variable mentions. */
export function toPenman(root: AmrNode): string {
  const expanded = new Set<string>();

  function emit(node: AmrNode, depth: number): string {
    if (expanded.has(node.variable)) return node.variable;
    expanded.add(node.variable);
    const indent = "    ".repeat(depth + 1);
    let out = `(${node.variable} / ${node.concept}`;
    for (const rel of node.relations) {
      const target = typeof rel.target === "string" ? rel.target : emit(rel.target, depth + 1);
      out += `\n${indent}${rel.role} ${target}`;
    }
    return out + ")";
  }

  return emit(root, 0);
}

/** Concept list in serialization order (first mention only). */
export function conceptsInOrder(root: AmrNode): string[] {
  const seen = new Set<string>();
  const out: string[] = [];

  function walk(node: AmrNode): void {
    if (seen.has(node.variable)) return;
    seen.add(node.variable);
    out.push(node.concept);
    for (const rel of node.relations) {
      if (typeof rel.target !== "string") walk(rel.target);
    }
  }

  walk(root);
  return out;
}
