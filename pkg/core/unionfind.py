"""
Disjoint sets with path compression and union by rank.
"""
from typing import Dict, Hashable, Iterable, List


class UnionFind:
    """Union-Find over a fixed set of hashable elements."""

    def __init__(self, elements: Iterable[Hashable]):
        self.parent: Dict[Hashable, Hashable] = {}
        self.rank: Dict[Hashable, int] = {}
        for element in elements:
            self.add(element)

    def add(self, element: Hashable) -> None:
        if element not in self.parent:
            self.parent[element] = element
            self.rank[element] = 0

    def find(self, element: Hashable) -> Hashable:
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def union(self, i: Hashable, j: Hashable) -> bool:
        """Merge the sets of i and j; False when they were already together."""
        root_i = self.find(i)
        root_j = self.find(j)
        if root_i == root_j:
            return False
        if self.rank[root_i] < self.rank[root_j]:
            root_i, root_j = root_j, root_i
        self.parent[root_j] = root_i
        if self.rank[root_i] == self.rank[root_j]:
            self.rank[root_i] += 1
        return True

    def groups(self) -> List[List[Hashable]]:
        """Classes as lists, each in insertion order, ordered by first member."""
        by_root: Dict[Hashable, List[Hashable]] = {}
        for element in self.parent:
            by_root.setdefault(self.find(element), []).append(element)
        return list(by_root.values())
