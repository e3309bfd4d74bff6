"""Why exact recognition must be hard: number partitioning in tree clothing.

Compiles k-way Partition instances into flat trees whose recognizability is
equivalent to solvability: each weight becomes an apple (which cannot
survive on its own), each part a basket (which can absorb apples worth at
most its size).  The demo runs both the brute-force solver and the
recognizer on a solvable and an unsolvable instance and recovers the
partition back out of the recognizer's certificate.
"""

from uftree import (
    format_report,
    make_apple,
    make_basket,
    make_flat_tree,
    parse_instance,
    serialize_tree,
    verify_reduction,
)


def main() -> None:
    print("An apple of weight 3 (one leaf, three rank-1 children, rank-2 root):")
    print(serialize_tree(make_apple(3)), end="")
    print()
    print("A basket of size 5 (seven rank-0 nodes, one rank-1, rank-3 root):")
    print(serialize_tree(make_basket(5)), end="")
    print()

    positive = parse_instance("1,2,3,4,4;2")
    flat = make_flat_tree(positive)
    print(
        f"Instance 1+2+3+4+4 into k=2 parts of sum {positive.target}: "
        f"flat tree with {flat.tree.node_count} nodes "
        f"({len(flat.apple_roots)} apples, {len(flat.basket_roots)} baskets)"
    )
    print()
    print(format_report(verify_reduction(positive)), end="")
    print()

    negative = parse_instance("1,1,4;2")
    print("Instance 1+1+4 into k=2 parts of sum 3 has no solution, and the")
    print("matching flat tree is rejected for the same reason:")
    print()
    print(format_report(verify_reduction(negative)), end="")


if __name__ == "__main__":
    main()
