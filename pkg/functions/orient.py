"""
定向資料模型與半遞移性檢查
功能：
1. Orientation (每條邊 F / B / U) 與可變的 ArcState
2. 無環判定、捷徑 (shortcut) 搜尋與見證
3. 半遞移 / 3-半遞移驗證器
4. 窮舉定向搜尋 (獨立的對照 oracle)
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum

import networkx as nx
import numpy as np

from functions.graph_core import Graph
from util.config import env
from util.log import debug


class IncompleteOrientationError(ValueError):
    """需要完整定向，但仍有無向邊"""


class CyclicOrientationError(ValueError):
    """需要無環定向，但存在有向環"""


class BoundExceededError(ValueError):
    """超出窮舉搜尋的邊數或節點預算"""


class Direction(str, Enum):
    FORWARD = "F"    # 儲存順序的 min → max
    BACKWARD = "B"
    UNDIRECTED = "U"


MODES = ("semi", "3semi")


@dataclass(frozen=True)
class Orientation:
    base: Graph
    directions: tuple[Direction, ...]

    def __post_init__(self):
        if len(self.directions) != self.base.m:
            raise ValueError(f"方向數 {len(self.directions)} 與邊數 {self.base.m} 不符")
        object.__setattr__(self, "directions", tuple(Direction(d) for d in self.directions))

    @classmethod
    def undirected(cls, base: Graph) -> "Orientation":
        return cls(base, (Direction.UNDIRECTED,) * base.m)

    @classmethod
    def from_string(cls, base: Graph, text: str) -> "Orientation":
        return cls(base, tuple(Direction(ch) for ch in text.strip()))

    @classmethod
    def from_arcs(cls, base: Graph, arcs) -> "Orientation":
        """由 (tail, head) 弧集合建立；未出現的邊為無向"""
        arc_set = set(arcs)
        directions = []
        for u, v in base.edges:
            if (u, v) in arc_set:
                directions.append(Direction.FORWARD)
            elif (v, u) in arc_set:
                directions.append(Direction.BACKWARD)
            else:
                directions.append(Direction.UNDIRECTED)
        return cls(base, tuple(directions))

    def to_string(self) -> str:
        return "".join(d.value for d in self.directions)

    @property
    def is_complete(self) -> bool:
        return Direction.UNDIRECTED not in self.directions

    def arcs(self) -> list[tuple[int, int]]:
        result = []
        for (u, v), d in zip(self.base.edges, self.directions):
            if d is Direction.FORWARD:
                result.append((u, v))
            elif d is Direction.BACKWARD:
                result.append((v, u))
        return result

    def undirected_edges(self) -> list[tuple[int, int]]:
        return [e for e, d in zip(self.base.edges, self.directions) if d is Direction.UNDIRECTED]

    def to_digraph(self) -> nx.DiGraph:
        digraph = nx.DiGraph()
        digraph.add_nodes_from(range(self.base.n))
        digraph.add_edges_from(self.arcs())
        return digraph

    def to_dot(self, name: str = "D", labels=None) -> str:
        """有向圖 DOT；無向邊以 dir=none 表示"""
        label_list = list(labels) if labels is not None else [str(v) for v in range(self.base.n)]
        out = [f"digraph {name} {{"]
        for v in range(self.base.n):
            out.append(f'  {v} [label="{label_list[v]}"];')
        for (u, v), d in zip(self.base.edges, self.directions):
            if d is Direction.FORWARD:
                out.append(f"  {u} -> {v};")
            elif d is Direction.BACKWARD:
                out.append(f"  {v} -> {u};")
            else:
                out.append(f"  {u} -> {v} [dir=none];")
        out.append("}")
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ShortcutWitness:
    """路徑 v_0 … v_k (k ≥ 3)、閉合弧 v_0 → v_k，以及缺少的弦 v_i → v_j"""
    path: tuple[int, ...]
    missing: tuple[int, int]

    @property
    def length(self) -> int:
        return len(self.path) - 1

    @property
    def closing_arc(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]


class ArcState:
    """
    可變的 (部分) 定向狀態，窮舉搜尋與補全共用。
    弦「缺少」只在確定不會再出現時成立：兩點不相鄰，或該邊已定為反向。
    """

    def __init__(self, orientation: Orientation):
        base = orientation.base
        self.base = base
        self.out: list[set[int]] = [set() for _ in range(base.n)]
        self.inn: list[set[int]] = [set() for _ in range(base.n)]
        self.directions = list(orientation.directions)
        self.pending: set[tuple[int, int]] = set()
        for i, ((u, v), d) in enumerate(zip(base.edges, orientation.directions)):
            if d is Direction.FORWARD:
                self._add(u, v)
            elif d is Direction.BACKWARD:
                self._add(v, u)
            else:
                self.pending.add((u, v))

    def _add(self, tail: int, head: int):
        self.out[tail].add(head)
        self.inn[head].add(tail)

    def orient(self, index: int, tail: int, head: int):
        u, v = self.base.edges[index]
        self.pending.discard((u, v))
        self._add(tail, head)
        self.directions[index] = Direction.FORWARD if (tail, head) == (u, v) else Direction.BACKWARD

    def unorient(self, index: int):
        u, v = self.base.edges[index]
        d = self.directions[index]
        tail, head = (u, v) if d is Direction.FORWARD else (v, u)
        self.out[tail].discard(head)
        self.inn[head].discard(tail)
        self.directions[index] = Direction.UNDIRECTED
        self.pending.add((u, v))

    def reaches(self, src: int, dst: int) -> bool:
        if src == dst:
            return True
        seen = {src}
        stack = [src]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y == dst:
                    return True
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def is_absent(self, a: int, b: int) -> bool:
        if b in self.out[a]:
            return False
        return (min(a, b), max(a, b)) not in self.pending

    def _hops_to(self, target: int) -> tuple[dict[int, int], dict[int, int]]:
        """反向 BFS：到 target 的最短距離與下一跳"""
        dist = {target: 0}
        nxt: dict[int, int] = {}
        queue = deque([target])
        while queue:
            y = queue.popleft()
            for x in sorted(self.inn[y]):
                if x not in dist:
                    dist[x] = dist[y] + 1
                    nxt[x] = y
                    queue.append(x)
        return dist, nxt

    def find_shortcut(self, max_len: int | None = None) -> ShortcutWitness | None:
        """
        依拓撲方向深度優先列舉路徑，找出長度 ≤ max_len 的捷徑。
        前綴一出現確定缺少的弦，就以最短路徑接到終點；否則只延伸仍可閉合的前綴。
        """
        limit = max_len if max_len is not None else self.base.n
        hops_cache: dict[int, tuple[dict[int, int], dict[int, int]]] = {}

        for v0 in range(self.base.n):
            for vk in sorted(self.out[v0]):
                if vk not in hops_cache:
                    hops_cache[vk] = self._hops_to(vk)
                dist, nxt = hops_cache[vk]
                witness = self._extend([v0], vk, dist, nxt, limit)
                if witness is not None:
                    return witness
        return None

    def _extend(self, path: list[int], vk: int, dist: dict[int, int], nxt: dict[int, int],
                limit: int) -> ShortcutWitness | None:
        last = path[-1]
        j = len(path)
        for w in sorted(self.out[last]):
            if w == vk:
                if j < 3:
                    continue
                for vi in path[1:-1]:
                    if self.is_absent(vi, vk):
                        return ShortcutWitness(tuple(path) + (vk,), (vi, vk))
                continue
            if w not in dist or j + dist[w] > limit:
                continue
            missing = next((vi for vi in path[:-1] if self.is_absent(vi, w)), None)
            if missing is not None:
                tail = [w]
                while tail[-1] != vk:
                    tail.append(nxt[tail[-1]])
                return ShortcutWitness(tuple(path) + tuple(tail), (missing, w))
            witness = self._extend(path + [w], vk, dist, nxt, limit)
            if witness is not None:
                return witness
        return None

    def three_shortcut_through(self, tail: int, head: int) -> bool:
        """
        剛加入的弧 tail → head 是否落在某個確定的長度 3 捷徑上。
        新弧只能是三條路徑弧之一或閉合弧；讓弦變成「缺少」的反向弧必然成環。
        """
        out, inn, absent = self.out, self.inn, self.is_absent
        # 閉合弧 v0 → v3
        for v1 in out[tail]:
            for v2 in out[v1] & inn[head]:
                if absent(tail, v2) or absent(v1, head):
                    return True
        # v0 → v1
        for v2 in out[head]:
            for v3 in out[v2] & out[tail]:
                if absent(tail, v2) or absent(head, v3):
                    return True
        # v1 → v2
        for v0 in inn[tail]:
            for v3 in out[head] & out[v0]:
                if absent(v0, head) or absent(tail, v3):
                    return True
        # v2 → v3
        for v1 in inn[tail]:
            for v0 in inn[v1] & inn[head]:
                if absent(v0, tail) or absent(v1, head):
                    return True
        return False

    def to_orientation(self) -> Orientation:
        return Orientation(self.base, tuple(self.directions))


# ============ 驗證器 ============

def is_acyclic(o: Orientation) -> bool:
    if not o.is_complete:
        raise IncompleteOrientationError("is_acyclic 需要完整定向")
    return nx.is_directed_acyclic_graph(o.to_digraph())


def find_shortcut(o: Orientation, max_len: int | None = None) -> ShortcutWitness | None:
    """
    找出長度 ≤ max_len 的捷徑見證 (max_len=None 表示不限)；max_len=3 即
    「若 v0→v3 則 v0→v2 且 v1→v3」條件。
    Raises:
        IncompleteOrientationError, CyclicOrientationError
    """
    if not is_acyclic(o):
        raise CyclicOrientationError("find_shortcut 需要無環定向")
    return ArcState(o).find_shortcut(max_len)


def is_semi_transitive(o: Orientation) -> bool:
    return is_acyclic(o) and find_shortcut(o) is None


def is_3_semi_transitive(o: Orientation) -> bool:
    return is_acyclic(o) and find_shortcut(o, max_len=3) is None


def shortcut_witness_is_valid(o: Orientation, w: ShortcutWitness) -> bool:
    """把見證套回定向重新檢查"""
    arcs = set(o.arcs())
    path = w.path
    k = len(path) - 1
    if k < 3 or len(set(path)) != len(path):
        return False
    if any((path[t], path[t + 1]) not in arcs for t in range(k)):
        return False
    if (path[0], path[-1]) not in arcs or w.missing in arcs:
        return False
    a, b = w.missing
    if a not in path or b not in path:
        return False
    i, j = path.index(a), path.index(b)
    return i < j and j - i > 1 and (i, j) != (0, k)


def three_shortcut_quadruples(o: Orientation) -> list[tuple[int, int, int, int]]:
    """以四重迴圈直接列出所有長度 3 的捷徑 (v0, v1, v2, v3)"""
    n = o.base.n
    arc = np.zeros((n, n), dtype=bool)
    for tail, head in o.arcs():
        arc[tail, head] = True
    found = []
    for v0 in range(n):
        for v1 in range(n):
            if not arc[v0, v1]:
                continue
            for v2 in range(n):
                if not arc[v1, v2]:
                    continue
                for v3 in range(n):
                    if arc[v2, v3] and arc[v0, v3] and not (arc[v0, v2] and arc[v1, v3]):
                        found.append((v0, v1, v2, v3))
    return found


# ============ 窮舉搜尋 ============

def exhaustive_orientation_search(g: Graph, mode: str = "semi", max_edges: int | None = None,
                                  budget: int | None = None) -> Orientation | None:
    """
    窮舉所有定向，回傳第一個通過 mode 驗證的完整定向；不存在則回傳 None。
    邊 0 固定正向 (整體反轉對稱)，依儲存順序回溯，正向先試，
    每一步以有向環與確定捷徑剪枝。
    Args:
        g (Graph): 圖。
        mode (str): "semi" 或 "3semi"。
        max_edges (int | None): 邊數上限，預設 env.SEARCH_MAX_EDGES。
        budget (int | None): 節點預算，預設 env.SEARCH_BUDGET。
    Raises:
        BoundExceededError: 邊數超過上限或節點預算用完。
    """
    if mode not in MODES:
        raise ValueError(f"未知的搜尋模式: {mode}")
    bound = max_edges if max_edges is not None else env.SEARCH_MAX_EDGES
    if g.m > bound:
        raise BoundExceededError(f"邊數 {g.m} 超過窮舉上限 {bound}")
    remaining = budget if budget is not None else env.SEARCH_BUDGET
    max_len = None if mode == "semi" else 3

    state = ArcState(Orientation.undirected(g))
    nodes = 0

    def assign(index: int) -> bool:
        nonlocal nodes
        if index == g.m:
            return True
        nodes += 1
        if nodes > remaining:
            raise BoundExceededError(f"窮舉搜尋超過節點預算 {remaining}")
        u, v = g.edges[index]
        choices = [(u, v)] if index == 0 else [(u, v), (v, u)]
        for tail, head in choices:
            if state.reaches(head, tail):
                continue
            state.orient(index, tail, head)
            if max_len == 3:
                clean = not state.three_shortcut_through(tail, head)
            else:
                clean = state.find_shortcut() is None
            if clean and assign(index + 1):
                return True
            state.unorient(index)
        return False

    found = assign(0)
    debug(f"窮舉搜尋 ({mode}) 節點數: {nodes}")
    return state.to_orientation() if found else None
