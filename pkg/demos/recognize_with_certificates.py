"""Recognizing merge/compress histories, with independently replayable proofs.

Walks through the two recognition levels: the linear Union-tree check and
the exact (NP-complete) Union-Find check.  Positive verdicts come with a
push certificate that a dumb replayer can validate; small cases are
cross-checked against the brute-force push-space oracle.
"""

from uftree import (
    brute_force_is_uf,
    check_certificate,
    collapse,
    count_filter,
    format_certificate,
    is_union_find_tree,
    is_union_tree,
    merge,
    random_uf_tree,
    singleton,
)


def verdict_line(name, tree):
    verdict = is_union_find_tree(tree)
    steps = len(verdict.certificate) if verdict.certificate else 0
    print(f"{name:28} -> {verdict.reason:18} (accepted={verdict.accepted}, steps={steps})")
    return verdict


def main() -> None:
    print("A merge-only tree needs no pushes at all:")
    union = merge(merge(singleton(), singleton()), merge(singleton(), singleton()))
    assert is_union_tree(union)
    verdict_line("merge(merge, merge)", union)
    print()

    print("Compressing a path makes the tree non-Union but still recognizable:")
    squashed = collapse(union, 3)
    assert not is_union_tree(squashed)
    verdict = verdict_line("collapsed tree", squashed)
    print("certificate text:")
    print(format_certificate(verdict.certificate), end="")
    print("replay says:", check_certificate(squashed, verdict.certificate))
    print("oracle says:", brute_force_is_uf(squashed))
    print()

    print("A rank-2 chain cannot arise from any merge/compress history:")
    from uftree import RankedTree

    chain = RankedTree((-1, 0, 1), (2, 1, 0))
    verdict_line("chain 2 <- 1 <- 0", chain)
    print("rank-0 nodes vs positive:", count_filter(chain), "(the count filter already fails)")
    print("oracle says:", brute_force_is_uf(chain))
    print()

    print("A larger engine-built tree, recognized with its proof replayed:")
    big = random_uf_tree(48, seed=7, collapse_prob=0.45)
    verdict = verdict_line("random_uf_tree(48, seed=7)", big)
    if verdict.certificate is not None:
        print("replay says:", check_certificate(big, verdict.certificate))
        print(f"bound: {len(verdict.certificate)} steps <= {big.node_count}^2 =",
              big.node_count ** 2)


if __name__ == "__main__":
    main()
