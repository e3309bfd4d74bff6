"""A guided tour of ranked trees and the three restructuring moves.

Builds two small trees, merges them, pushes a child one level deeper, then
collapses a deep node back to the root, printing each stage in the text
format plus a DOT rendering of the final tree.
"""

from uftree import (
    RankedTree,
    collapse,
    export_dot,
    merge,
    precedes,
    push,
    serialize_tree,
    validate,
)


def show(title: str, tree: RankedTree) -> None:
    print(f"--- {title} (root rank {tree.root_rank}, {tree.node_count} nodes)")
    print(serialize_tree(tree), end="")
    print()


def main() -> None:
    # s: a rank-2 root over four rank-1 children; child 2 carries four leaves
    s = RankedTree((-1, 0, 0, 0, 0, 2, 2, 2, 2), (2, 1, 1, 1, 1, 0, 0, 0, 0))
    # t: a rank-2 root over two leaves
    t = RankedTree((-1, 0, 0), (2, 0, 0))
    assert validate(s) and validate(t)
    show("tree s", s)
    show("tree t", t)

    merged = merge(s, t)
    show("merge(s, t): equal root ranks, so the surviving root grew to rank 3", merged)

    # node 2 (rank 1) slides below its higher-ranked new sibling 9 (rank 2)
    pushed = push(merged, 2, 9)
    show("push(2, 9): node 2 and its leaves sit one level deeper", pushed)
    print("depth sum grew by the moved subtree's size:",
          pushed.depth_sum() - merged.depth_sum())
    print("the merged tree precedes the pushed one:", precedes(merged, pushed))
    print()

    # collapsing at leaf 7 reattaches 7 and its ancestors 2 and 9 to the root,
    # exactly what a path compression triggered at 7 would do
    collapsed = collapse(pushed, 7)
    show("collapse(7): the whole ancestor chain hangs off the root again", collapsed)

    print("--- DOT rendering of the final tree")
    print(export_dot(collapsed), end="")


if __name__ == "__main__":
    main()
