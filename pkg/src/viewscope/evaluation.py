"""Ground-truth evaluation of viewpoint assignments.

Purity is the fraction of users falling in the majority truth class of their
cluster; NMI is mutual information normalized by the arithmetic mean of the
two labelings' entropies. Both are computed over the intersection of users
present in the partition and in the truth file; everyone else is excluded
and counted.
"""

from __future__ import annotations

import csv
import math
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Mapping


class MetricsError(ValueError):
    pass


def _overlap(
    partition: Mapping[str, int], truth: Mapping[str, str]
) -> tuple[list[int], list[str]]:
    users = sorted(set(partition) & set(truth))
    if not users:
        raise MetricsError("no users shared between partition and ground truth")
    return [partition[u] for u in users], [truth[u] for u in users]


def purity(partition: Mapping[str, int], truth: Mapping[str, str]) -> float:
    """Proportion of users assigned to their cluster's majority truth class."""
    clusters, classes = _overlap(partition, truth)
    n = len(clusters)
    by_cluster: dict[int, Counter] = {}
    for c, t in zip(clusters, classes):
        by_cluster.setdefault(c, Counter())[t] += 1
    if all(sum(counter.values()) == 1 for counter in by_cluster.values()):
        warnings.warn("every cluster is a singleton; purity is trivially 1.0", stacklevel=2)
    return sum(max(counter.values()) for counter in by_cluster.values()) / n


def _entropy(labels: list) -> float:
    n = len(labels)
    return -sum((c / n) * math.log(c / n) for c in Counter(labels).values() if c > 0)


def nmi(partition: Mapping[str, int], truth: Mapping[str, str]) -> float:
    """Mutual information over 2 / (H(clusters) + H(classes)).

    Defined as 1.0 when both labelings are the single trivial cluster, and
    0.0 whenever one labeling is trivial and the other is not (one entropy
    zero forces the mutual information to zero).
    """
    clusters, classes = _overlap(partition, truth)
    n = len(clusters)
    h_c = _entropy(clusters)
    h_t = _entropy(classes)
    if h_c == 0.0 and h_t == 0.0:
        return 1.0
    joint = Counter(zip(clusters, classes))
    p_c = Counter(clusters)
    p_t = Counter(classes)
    mi = 0.0
    for (c, t), count in joint.items():
        p_ct = count / n
        mi += p_ct * math.log(p_ct * n * n / (p_c[c] * p_t[t]))
    mi = max(mi, 0.0)  # guard tiny negative rounding
    return 2.0 * mi / (h_c + h_t)


@dataclass
class EvalReport:
    purity: float
    nmi: float
    n_evaluated: int
    n_unlabeled: int

    def to_dict(self) -> dict:
        return {
            "purity": self.purity,
            "nmi": self.nmi,
            "n_evaluated": self.n_evaluated,
            "n_unlabeled": self.n_unlabeled,
        }


def evaluate(
    partition: Mapping[str, int],
    truth: Mapping[str, str],
    exclude_clusters: set[int] | None = None,
) -> EvalReport:
    """Full report; ``exclude_clusters`` drops (e.g. noisy) clusters first."""
    if exclude_clusters:
        partition = {u: c for u, c in partition.items() if c not in exclude_clusters}
        if not partition:
            raise MetricsError("all users excluded from evaluation")
    evaluated = set(partition) & set(truth)
    return EvalReport(
        purity=purity(partition, truth),
        nmi=nmi(partition, truth),
        n_evaluated=len(evaluated),
        n_unlabeled=len(set(partition) - set(truth)),
    )


def load_truth(path) -> dict[str, str]:
    """Read a `user,label` CSV; a literal `user,label` header row is skipped."""
    truth: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row:
                continue
            if i == 0 and [c.strip().lower() for c in row[:2]] == ["user", "label"]:
                continue
            if len(row) < 2:
                raise MetricsError(f"truth file row {i + 1}: expected user,label")
            user, label = row[0].strip(), row[1].strip()
            if user in truth and truth[user] != label:
                raise MetricsError(f"user {user!r} has conflicting labels")
            truth[user] = label
    if not truth:
        raise MetricsError("truth file contains no labels")
    return truth
