"""What the graphs prove depends on how measurements realize them.

Commuting operators need not correspond to jointly performable
measurements; comeasurability is declared per realization.  Counting the
lines that fail to be comeasurable sorts arguments into types I, II and
III, and a small uniqueness lemma controls the escape route of realizing
a whole line by functions of one measurement.
"""

from kscheck import classify_type, collapse_edge, enumerate_lemma_sweep, lemma_check
from kscheck.catalog import (
    PM_COLUMN_3,
    ghz_graph,
    ghz_standard_realization,
    peres_mermin_graph,
    pm_full_realization,
    pm_hyperedge_realization,
    pm_spin_realization,
)


def main():
    pm = peres_mermin_graph()
    ghz = ghz_graph()

    print("argument types by realization:")
    for name, graph, realization in (
        ("square, all lines comeasurable", pm, pm_full_realization()),
        ("square, paired spin analyzers ", pm, pm_spin_realization()),
        ("pentagram, spacelike parties  ", ghz, ghz_standard_realization()),
    ):
        kind = classify_type(graph, realization)
        flagged = [
            "{" + ",".join(graph.edge_labels(e)) + "}" for e in kind.non_comeasurable_edges
        ]
        print(f"  {name}: type {kind.kind}  failing lines: {flagged or 'none'}")

    print("\ncollapsing the third column onto one shared measurement:")
    result = collapse_edge(pm, pm_spin_realization(), PM_COLUMN_3)
    gained = [pm.labels[v] for v in result.multi_associated]
    print(f"  fresh measurement {result.label!r}; vertices now doubly realized: {gained}")
    print(f"  new type: {classify_type(pm, result.realization).kind} (one repair done, one line left)")

    print("\nthe six-measurement form (every line collapsed):")
    check = lemma_check(pm, pm_hyperedge_realization())
    print(f"  line-based: {check.hyperedge_based}, all lines comeasurable: "
          f"{check.all_edges_comeasurable}, unique: {check.unique}")
    print(f"  implication 'line-based & comeasurable => non-unique' holds: {check.holds}")

    print("\nexhaustive sweep over collapse-structured realizations of the square")
    sweep = enumerate_lemma_sweep(pm, pool_limit=12, assoc_limit=2)
    print(f"  {sweep.n_realizations} realizations, {sweep.n_antecedent} satisfy the antecedent,")
    print(f"  unique counterexamples: {sweep.n_antecedent_and_unique} "
          f"(singleton reading: {sweep.n_antecedent_and_singly_associated})")


if __name__ == "__main__":
    main()
