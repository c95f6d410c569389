"""
Substructure chain graph
DOT rendering of the left and right Casimirs and how the substructures link them
"""

import logging
from typing import List, Tuple

logger = logging.getLogger(__name__)


class ChainGraph:
    """Nodes L1..L(n-1) and R2..Rn; an edge joins two Casimirs that commute"""

    def __init__(self, n: int):
        self.n = n
        self.colors = {
            'left': '#1F77B4',     # Blue
            'right': '#D62728',    # Red
        }

    def left_nodes(self) -> List[str]:
        return [f"L{k}" for k in range(1, self.n)]

    def right_nodes(self) -> List[str]:
        return [f"R{k}" for k in range(2, self.n + 1)]

    def edges(self) -> List[Tuple[str, str]]:
        """
        Consecutive left Casimirs, consecutive right Casimirs, and every R(i+1) with
        each Lj for j <= i. Lk and Rk never commute and are left unjoined.
        """
        n = self.n
        edges = [(f"L{k}", f"L{k + 1}") for k in range(1, n - 1)]
        edges += [(f"R{k}", f"R{k + 1}") for k in range(2, n)]
        for i in range(1, n):
            for j in range(1, i + 1):
                edges.append((f"R{i + 1}", f"L{j}"))
        return edges

    def substructure_members(self) -> List[Tuple[int, List[str]]]:
        """The four chain nodes each substructure k = 2..n-1 touches"""
        return [(k, [f"L{k - 1}", f"L{k}", f"R{k}", f"R{k + 1}"]) for k in range(2, self.n)]

    def to_dot(self) -> str:
        lines = [f'digraph racah_chain_{self.n} {{', '  rankdir=LR;', '  node [shape=circle];']
        for name in self.left_nodes():
            lines.append(f'  "{name}" [color="{self.colors["left"]}"];')
        for name in self.right_nodes():
            lines.append(f'  "{name}" [color="{self.colors["right"]}"];')
        for k, members in self.substructure_members():
            lines.append(f'  // S({self.n},{k}): {" ".join(members)}')
        for a, b in self.edges():
            lines.append(f'  "{a}" -> "{b}" [dir=none];')
        lines.append('}')
        logger.debug("chain graph for n=%d has %d edges", self.n, len(self.edges()))
        return "\n".join(lines) + "\n"
