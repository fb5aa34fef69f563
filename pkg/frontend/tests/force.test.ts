import { describe, expect, it } from 'vitest';

import { layout, mulberry32 } from '../src/force';

const edges = [
  { head: 1, tail: 2 },
  { head: 1, tail: 3 },
  { head: 3, tail: 4 },
];

describe('seeded force layout', () => {
  it('is deterministic for a fixed seed', () => {
    const a = layout([1, 2, 3, 4], edges, { width: 800, height: 520, seed: 9 });
    const b = layout([1, 2, 3, 4], edges, { width: 800, height: 520, seed: 9 });
    expect([...a.entries()]).toEqual([...b.entries()]);
  });

  it('different seeds move the picture', () => {
    const a = layout([1, 2, 3, 4], edges, { width: 800, height: 520, seed: 9 });
    const b = layout([1, 2, 3, 4], edges, { width: 800, height: 520, seed: 10 });
    const moved = [...a.keys()].some((id) => {
      const pa = a.get(id)!;
      const pb = b.get(id)!;
      return Math.abs(pa.x - pb.x) > 1e-6 || Math.abs(pa.y - pb.y) > 1e-6;
    });
    expect(moved).toBe(true);
  });

  it('preserves the node set and keeps positions in bounds', () => {
    const ids = [5, 9, 11, 13, 17];
    const positions = layout(ids, [], { width: 300, height: 200, seed: 2 });
    expect([...positions.keys()].sort((x, y) => x - y)).toEqual(ids);
    for (const node of positions.values()) {
      expect(node.x).toBeGreaterThanOrEqual(0);
      expect(node.x).toBeLessThanOrEqual(300);
      expect(node.y).toBeGreaterThanOrEqual(0);
      expect(node.y).toBeLessThanOrEqual(200);
    }
  });

  it('centers a lone node', () => {
    const positions = layout([7], [], { width: 400, height: 300, seed: 1 });
    expect(positions.get(7)).toMatchObject({ x: 200, y: 150 });
  });

  it('mulberry32 streams are reproducible and in [0, 1)', () => {
    const a = mulberry32(42);
    const b = mulberry32(42);
    for (let i = 0; i < 100; i++) {
      const va = a();
      expect(va).toBe(b());
      expect(va).toBeGreaterThanOrEqual(0);
      expect(va).toBeLessThan(1);
    }
  });
});
