"""Print the 7x7 example function as an arrow grid and the 7-bit knowledge trace.

    python scripts/reproduce_figures.py
"""
from tarski_query.adversary import KnowledgeState, c_index, delta_set, update_knowledge
from tarski_query.oracle import HiddenPointOracle

ARROWS = {
    (0, 0): "*",
    (1, 0): ">", (-1, 0): "<", (0, 1): "^", (0, -1): "v",
    (1, 1): "/", (-1, -1): "/", (1, -1): "\\", (-1, 1): "\\",
}


def arrow_grid(n=7, a=(2, 4)):
    f = HiddenPointOracle.of(n, a)
    # rows printed top-down in the second coordinate
    for y in reversed(range(n)):
        cells = []
        for x in range(n):
            fx, fy = f((x, y))
            cells.append(ARROWS[(fx - x, fy - y)])
        print(f"{y} " + " ".join(cells))
    print("  " + " ".join(str(x) for x in range(n)))


def knowledge_trace():
    a = (0, 0, 1, 1, 1, 1, 0)
    queries = [(0, 1, 1, 1, 0, 0, 1), (0, 0, 1, 0, 1, 0, 1), (0, 0, 1, 1, 1, 0, 0)]
    f = HiddenPointOracle.of(2, a)
    state = KnowledgeState(len(a))
    print("a      " + " ".join(map(str, a)))
    for t, v in enumerate(queries, start=1):
        r = f(v)
        d0, d1 = delta_set(state, v, r, 0), delta_set(state, v, r, 1)
        c0, c1 = c_index(v, r, 0), c_index(v, r, 1)
        state = update_knowledge(state, v, r)
        print(f"v{t}     " + " ".join(map(str, v)))
        print(f"f(v{t})  " + " ".join(map(str, r)))
        print(
            f"       c(0)={c0 or 'inf'} c(1)={c1 or 'inf'} "
            f"delta0={sorted(d0)} delta1={sorted(d1)} I={sorted(state.indices)}"
        )


if __name__ == "__main__":
    print("f^a with a = (2,4), n = 7  (* fixed, > < ^ v single moves, / \\ diagonal)")
    arrow_grid()
    print()
    knowledge_trace()
