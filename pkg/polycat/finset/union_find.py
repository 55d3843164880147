# https://en.wikipedia.org/wiki/Disjoint-set_data_structure

import collections
from typing import Dict, Generic, Iterable, List, TypeVar

T = TypeVar("T")


class DisjointSet(Generic[T]):
    """Union-find over hashable elements, used to quotient finite sets.

    Examples:
        >>> ds = DisjointSet(["a", "b", "c"])
        >>> ds.union("a", "c")
        >>> ds.find("a") == ds.find("c")
        True
        >>> ds.find("a") == ds.find("b")
        False
    """

    def __init__(self, elements: Iterable[T] = ()):
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = {}
        for e in elements:
            self.make_set(e)

    def make_set(self, e: T):
        if e in self.parent:
            return
        self.parent[e] = e
        self.rank[e] = 0

    # find with path compression
    def find(self, e: T) -> T:
        self.make_set(e)
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    # union by rank
    def union(self, x: T, y: T):
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root

        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1

    def classes(self) -> List[List[T]]:
        """Equivalence classes, each sorted, ordered by their least member"""
        groups = collections.defaultdict(list)
        for e in self.parent:
            groups[self.find(e)].append(e)
        return sorted((sorted(group) for group in groups.values()), key=lambda g: g[0])
