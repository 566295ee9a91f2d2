"""
無向簡單圖核心
功能：
1. Graph 資料型別 (邊的順序是值的一部分，邊索引 = QCBO 變數索引)
2. 線圖、關聯矩陣、邊鄰接矩陣 Q = MᵀM − 2I、三角形列舉
3. 圖統計 (最大度數、二分性、色數)
4. 邊列表文字格式讀寫與 DOT 匯出
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from util.config import env


class InvalidGraphError(ValueError):
    """圖不合法：自迴圈、重複邊、端點超出範圍、目錄參數錯誤"""


class GraphFormatError(ValueError):
    """邊列表文字格式錯誤"""


Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """
    無向簡單圖。邊一律以 (min, max) 儲存，但保留輸入順序；
    兩個邊集合相同、順序不同的圖是不同的值。
    """
    vertex_count: int
    edges: tuple[Edge, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InvalidGraphError(f"vertex_count 不可為負: {self.vertex_count}")

        normalized = []
        seen = set()
        for raw in self.edges:
            u, v = int(raw[0]), int(raw[1])
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidGraphError(f"endpoint out of range in edge ({u}, {v}), n={self.vertex_count}")
            edge = (min(u, v), max(u, v))
            if edge in seen:
                raise InvalidGraphError(f"duplicate edge {edge}")
            seen.add(edge)
            normalized.append(edge)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbors(self) -> list[set[int]]:
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def same_edge_set(self, other: "Graph") -> bool:
        return self.vertex_count == other.vertex_count and set(self.edges) == set(other.edges)


def adjacency(g: Graph) -> np.ndarray:
    """n × n 鄰接矩陣 (0/1 整數)"""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    return a


# ============ 線圖與矩陣 ============

def line_graph(g: Graph) -> Graph:
    """
    線圖 L(G)：頂點 i 對應 g 的邊 e_i，兩邊共用端點時相鄰。
    Returns:
        Graph: 邊依 (較小索引, 較大索引) 字典序排列。
    """
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)

    pairs = set()
    for edge_ids in incident:
        for i, j in combinations(edge_ids, 2):
            pairs.add((min(i, j), max(i, j)))

    name = f"L({g.name})" if g.name else ""
    return Graph(g.m, tuple(sorted(pairs)), name=name)


def incidence_matrix(g: Graph) -> np.ndarray:
    """n × m 的 0–1 關聯矩陣 M，M[v][i] = 1 當且僅當 v 是 e_i 的端點"""
    mat = np.zeros((g.n, g.m), dtype=np.int64)
    for i, (u, v) in enumerate(g.edges):
        mat[u, i] = 1
        mat[v, i] = 1
    return mat


def edge_adjacency(g: Graph) -> np.ndarray:
    """
    邊鄰接矩陣 Q = MᵀM − 2I (對角線為 0)，等於 line_graph(g) 的鄰接矩陣。
    """
    mat = incidence_matrix(g)
    return mat.T @ mat - 2 * np.eye(g.m, dtype=np.int64)


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """所有三角形 (a < b < c)，字典序排列，每個只出現一次"""
    adj = g.neighbors()
    found = []
    for a, b in sorted(g.edges):
        for c in sorted(adj[a] & adj[b]):
            if c > b:
                found.append((a, b, c))
    return sorted(found)


# ============ 圖統計 ============

@dataclass(frozen=True)
class GraphStats:
    nodes: int
    edges: int
    max_degree: int
    two_colorable: bool
    chromatic_number: int | None
    chromatic_bounds: tuple[int, int]

    @property
    def chromatic_info(self) -> str:
        if self.chromatic_number is not None:
            return str(self.chromatic_number)
        lo, hi = self.chromatic_bounds
        return f"[{lo},{hi}]"


def _clique_lower_bound(nx_graph: nx.Graph) -> int:
    if nx_graph.number_of_nodes() == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(nx_graph))


def _greedy_upper_bound(nx_graph: nx.Graph) -> int:
    if nx_graph.number_of_nodes() == 0:
        return 0
    coloring = nx.greedy_color(nx_graph, strategy="largest_first")
    return max(coloring.values()) + 1


def _k_colorable(g: Graph, k: int, budget: list[int]) -> bool | None:
    """回溯判斷是否可 k 著色；節點預算用完回傳 None"""
    adj = g.neighbors()
    order = sorted(range(g.n), key=lambda v: -len(adj[v]))
    colors = [-1] * g.n
    if not order:
        return True

    # 每層 [位置, 進入時已用顏色數, 下一個要試的顏色]
    stack = [[0, 0, 0]]
    budget[0] -= 1
    if budget[0] < 0:
        return None
    while stack:
        frame = stack[-1]
        pos, used, c = frame
        v = order[pos]
        taken = {colors[w] for w in adj[v] if colors[w] >= 0}
        # 新顏色只嘗試一個 (顏色對稱)
        while c < min(k, used + 1) and c in taken:
            c += 1
        if c >= min(k, used + 1):
            colors[v] = -1
            stack.pop()
            continue
        colors[v] = c
        frame[2] = c + 1
        if pos + 1 == len(order):
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return None
        stack.append([pos + 1, max(used, c + 1), 0])
    return False


def graph_stats(g: Graph, budget: int | None = None) -> GraphStats:
    """
    計算節點數、邊數、最大度數、二分性與色數。
    Args:
        g (Graph): 圖。
        budget (int | None): 色數分支定界的節點預算，預設 env.CHROMATIC_BUDGET。
    Returns:
        GraphStats: 預算內完成則 chromatic_number 為精確值，否則為 None 並以
        chromatic_bounds = [最大團下界, 貪婪上界] 表示。
    """
    nx_graph = to_networkx(g)
    max_degree = max(g.degrees(), default=0)
    two_colorable = nx.is_bipartite(nx_graph)

    if g.m == 0 or two_colorable:
        chromatic = min(g.n, 1) if g.m == 0 else 2
        return GraphStats(g.n, g.m, max_degree, two_colorable, chromatic, (chromatic, chromatic))

    # 非二分圖至少需要 3 色
    lo = max(_clique_lower_bound(nx_graph), 3)
    hi = _greedy_upper_bound(nx_graph)

    remaining = [budget if budget is not None else env.CHROMATIC_BUDGET]
    chromatic = None
    for k in range(lo, hi):
        result = _k_colorable(g, k, remaining)
        if result is None:
            return GraphStats(g.n, g.m, max_degree, two_colorable, None, (k, hi))
        if result:
            chromatic = k
            break
    if chromatic is None:
        chromatic = hi
    return GraphStats(g.n, g.m, max_degree, two_colorable, chromatic, (chromatic, chromatic))


# ============ networkx 轉換 ============

def to_networkx(g: Graph) -> nx.Graph:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(g.n))
    nx_graph.add_edges_from(g.edges)
    return nx_graph


def from_networkx(nx_graph: nx.Graph, name: str = "", edge_order: Sequence[Edge] | None = None) -> Graph:
    """
    由 networkx 圖建立 Graph。節點依排序後重新編號為 0..n-1；
    未指定 edge_order 時邊依 (min, max) 字典序排列。
    """
    nodes = sorted(nx_graph.nodes())
    label = {node: i for i, node in enumerate(nodes)}
    if edge_order is None:
        edges = sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in nx_graph.edges())
    else:
        edges = [(label[u], label[v]) for u, v in edge_order]
    return Graph(len(nodes), tuple(edges), name=name)


# ============ 邊列表文字格式 ============

def parse_edge_list(text: str, name: str = "") -> Graph:
    """
    解析邊列表：第一行 "n m"，接著 m 行 "u v" (0-based)；'#' 開頭為註解行。
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))

    if not lines:
        raise GraphFormatError("缺少標頭行 'n m'")

    def ints(lineno: int, line: str) -> tuple[int, int]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"第 {lineno} 行格式錯誤 (需要兩個整數): {line!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"第 {lineno} 行格式錯誤 (需要兩個整數): {line!r}") from None

    n, m = ints(*lines[0])
    if n < 0 or m < 0:
        raise GraphFormatError(f"標頭數值不可為負: {lines[0][1]!r}")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"標頭宣告 {m} 條邊，實際為 {len(body)} 條")

    edges = [ints(lineno, line) for lineno, line in body]
    return Graph(n, tuple(edges), name=name)


def serialize_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def load_graph(path: str | Path, name: str | None = None) -> Graph:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_edge_list(text, name=name if name is not None else path.stem)


def save_graph(g: Graph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_edge_list(g))
    return path


# ============ DOT 匯出 ============

def to_dot(g: Graph, name: str = "G", labels: Iterable[str] | None = None) -> str:
    """無向圖 DOT 文字；labels 未指定時以頂點索引為標籤"""
    label_list = list(labels) if labels is not None else [str(v) for v in range(g.n)]
    out = [f"graph {name} {{"]
    for v in range(g.n):
        out.append(f'  {v} [label="{label_list[v]}"];')
    for u, v in g.edges:
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


def line_graph_dot(g: Graph, name: str = "LG") -> str:
    """線圖 DOT，頂點以來源邊 "(u,v)" 為標籤"""
    return to_dot(line_graph(g), name=name, labels=[f"({u},{v})" for u, v in g.edges])
