"""Coloring the two standard graphs.

Both built-in graphs carry nine resp. ten ±1-valued observables whose
lines multiply to a signed identity.  A value assignment puts ±1 on every
vertex; the product rule forces the values on each line to multiply to
that line's sign.  This walk-through shows why no assignment survives.
"""

from kscheck import admissible_tuples, parity_certificate, search_assignments
from kscheck.catalog import ghz_graph, peres_mermin_graph


def show(graph, name):
    print(f"== {name} ==")
    for label, op in graph.vertices:
        print(f"  {label}: {op}")
    print("  lines and signs:")
    for e, edge in enumerate(graph.hyperedges):
        members = ",".join(graph.labels[v] for v in edge)
        print(f"    edge {e}: {{{members}}} -> {graph.edge_signs[e]:+d}")

    tuples = admissible_tuples(graph, len(graph.hyperedges) - 1)
    print(f"  last edge admits {len(tuples)} outcome tuples, e.g. {tuples[0]}")

    verdict = search_assignments(graph)
    space = 2 ** graph.n_vertices
    print(f"  exhaustive search over {space} assignments: "
          f"{'SAT' if verdict.satisfiable else 'UNSAT'}")

    certificate = parity_certificate(graph)
    if certificate is not None:
        print(f"  parity certificate: {certificate.explanation()}")
    print()


def main():
    show(peres_mermin_graph(), "3x3 square")
    show(ghz_graph(), "pentagram")

    print("The certificate is the whole story: every vertex lies on an even")
    print("number of lines, so squaring the constraint system forces the")
    print("product of the signs to be +1, but it is -1 on both graphs.")


if __name__ == "__main__":
    main()
