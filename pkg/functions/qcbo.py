"""
二次約束二元最佳化 (QCBO)
    min xᵀQx,  x ∈ {−1, 1}^m
    s.t. |x_i + x_j + x_k| = 1  (線圖每個三角形都不全相等)

Q = MᵀM − 2I 是線圖的鄰接矩陣。轉成 0/1 變數時 x = 2y − 1，
    xᵀQx = yᵀ(4Q)y − 4(Q·1)ᵀy + 1ᵀQ·1
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from functions.graph_core import Graph, edge_adjacency, line_graph, triangles
from util.config import env
from util.log import debug

Triple = tuple[int, int, int]


class QcboStatus(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNKNOWN = "Unknown"    # 節點預算用完，不是不可行證明


@dataclass(frozen=True, eq=False)
class QcboProblem:
    q: np.ndarray
    nae_constraints: tuple[Triple, ...]

    def __post_init__(self):
        q = np.asarray(self.q, dtype=np.int64)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError(f"Q 必須是方陣，收到形狀 {q.shape}")
        if not np.array_equal(q, q.T):
            raise ValueError("Q 必須對稱")
        object.__setattr__(self, "q", q)

        triples = tuple(sorted({tuple(sorted(int(t) for t in triple)) for triple in self.nae_constraints}))
        for i, j, k in triples:
            if len({i, j, k}) != 3 or not (q[i, j] and q[i, k] and q[j, k]):
                raise ValueError(f"約束 {(i, j, k)} 不是 Q 的三角形")
        object.__setattr__(self, "nae_constraints", triples)

    @property
    def m(self) -> int:
        return self.q.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QcboProblem):
            return NotImplemented
        return np.array_equal(self.q, other.q) and self.nae_constraints == other.nae_constraints


@dataclass(frozen=True)
class QcboSolution:
    status: QcboStatus
    spins: tuple[int, ...] | None = None
    objective: int | None = None
    nodes_explored: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is QcboStatus.FEASIBLE


@dataclass(frozen=True, eq=False)
class QuboForm:
    """yᵀ·quadratic·y + linearᵀy + constant，約束 1 ≤ y_i + y_j + y_k ≤ 2"""
    quadratic: np.ndarray
    linear: np.ndarray
    constant: int
    constraints: tuple[Triple, ...] = field(default=())

    @property
    def m(self) -> int:
        return self.quadratic.shape[0]


def build_qcbo(g: Graph) -> QcboProblem:
    """
    由圖 g 建立 QCBO：q = edge_adjacency(g)，約束 = line_graph(g) 的所有三角形。
    Raises:
        ValueError: g 沒有邊。
    """
    if g.m == 0:
        raise ValueError("build_qcbo 需要至少一條邊")
    return QcboProblem(edge_adjacency(g), tuple(triangles(line_graph(g))))


def nae_holds(x, triple: Triple) -> bool:
    i, j, k = triple
    return abs(x[i] + x[j] + x[k]) == 1


def spin_objective(q: np.ndarray, x) -> int:
    vec = np.asarray(x, dtype=np.int64)
    return int(vec @ q @ vec)


def check_solution(p: QcboProblem, x) -> bool:
    if len(x) != p.m or any(v not in (-1, 1) for v in x):
        return False
    return all(nae_holds(x, t) for t in p.nae_constraints)


# ============ 求解器 ============

# 先試 +1
_BRANCH_VALUES = (1, -1)


class _Search:
    """
    完整回溯：依索引遞增分支，先試 +1；約束中兩個已定且相同時強制第三個相反。
    最佳化模式下以「已定對的貢獻 − 2 × 尚未決定對的 |q_ij| 總和」為下界剪枝。
    """

    def __init__(self, p: QcboProblem, optimize: bool, budget: int):
        self.p = p
        self.optimize = optimize
        self.budget = budget
        self.m = p.m
        self.x = [0] * self.m
        self.weight = [[int(w) for w in row] for row in p.q.tolist()]
        self.neighbors = [[j for j in range(self.m) if j != i and self.weight[i][j]] for i in range(self.m)]
        self.watch: list[list[Triple]] = [[] for _ in range(self.m)]
        for t in p.nae_constraints:
            for v in t:
                self.watch[v].append(t)
        self.partial = int(np.trace(p.q))
        self.open_weight = int(np.abs(np.triu(p.q, k=1)).sum())
        self.nodes = 0
        self.best: list[int] | None = None
        self.best_value: int | None = None

    def _set(self, i: int, value: int, trail: list):
        contribution = 0
        decided = 0
        for j in self.neighbors[i]:
            if self.x[j] != 0:
                contribution += 2 * self.weight[i][j] * value * self.x[j]
                decided += abs(self.weight[i][j])
        self.x[i] = value
        self.partial += contribution
        self.open_weight -= decided
        trail.append((i, contribution, decided))

    def _undo(self, trail: list):
        while trail:
            i, contribution, decided = trail.pop()
            self.x[i] = 0
            self.partial -= contribution
            self.open_weight += decided

    def _assign(self, i: int, value: int, trail: list) -> bool:
        """指派並傳播；發生衝突回傳 False"""
        queue = [(i, value)]
        while queue:
            v, val = queue.pop()
            if self.x[v] != 0:
                if self.x[v] != val:
                    return False
                continue
            self._set(v, val, trail)
            for a, b, c in self.watch[v]:
                vals = (self.x[a], self.x[b], self.x[c])
                if 0 not in vals:
                    if vals[0] == vals[1] == vals[2]:
                        return False
                    continue
                fixed = [s for s in vals if s != 0]
                if len(fixed) == 2 and fixed[0] == fixed[1]:
                    free = (a, b, c)[vals.index(0)]
                    queue.append((free, -fixed[0]))
        return True

    def _bound(self) -> int:
        return self.partial - 2 * self.open_weight

    def run(self) -> QcboStatus:
        try:
            self._branch()
        except _BudgetExceeded:
            return QcboStatus.UNKNOWN
        return QcboStatus.FEASIBLE if self.best is not None else QcboStatus.INFEASIBLE

    def _visit(self) -> int | None:
        """計入一個節點；回傳下一個要分支的變數，葉節點或被剪枝時回傳 None"""
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded()
        if self.optimize and self.best_value is not None and self._bound() >= self.best_value:
            return None
        try:
            return self.x.index(0)
        except ValueError:
            value = self.partial
            if self.best_value is None or value < self.best_value:
                self.best = list(self.x)
                self.best_value = value
            return None

    def _branch(self) -> bool:
        """
        以顯式堆疊回溯，每層為 [變數, 已試的值個數, trail]。
        回傳 True 代表可以停止 (可行模式下已找到解)。
        """
        i = self._visit()
        if i is None:
            return self.best is not None and not self.optimize
        stack = [[i, 0, []]]
        while stack:
            frame = stack[-1]
            var, tried, trail = frame
            self._undo(trail)
            if tried == len(_BRANCH_VALUES):
                stack.pop()
                continue
            frame[1] += 1
            if not self._assign(var, _BRANCH_VALUES[tried], trail):
                continue
            nxt = self._visit()
            if nxt is not None:
                stack.append([nxt, 0, []])
            elif self.best is not None and not self.optimize:
                return True
        return False


class _BudgetExceeded(Exception):
    pass


def solve_qcbo(p: QcboProblem, optimize: bool = False, budget: int | None = None) -> QcboSolution:
    """
    精確求解 QCBO。
    Args:
        p (QcboProblem): 問題。
        optimize (bool): False 只找可行解；True 找全域最小的 xᵀQx。
        budget (int | None): 搜尋節點預算，預設 env.SOLVER_BUDGET；用完回傳 Unknown。
    Returns:
        QcboSolution: Infeasible 是完整搜尋後的不可滿足證明。
    """
    search = _Search(p, optimize, budget if budget is not None else env.SOLVER_BUDGET)
    status = search.run()
    debug(f"QCBO 求解: {status.value}, 節點數 {search.nodes}")
    if status is QcboStatus.FEASIBLE:
        spins = tuple(search.best)
        return QcboSolution(status, spins, spin_objective(p.q, spins), search.nodes)
    return QcboSolution(status, None, None, search.nodes)


# ============ QUBO 轉換 ============

def to_qubo(p: QcboProblem) -> QuboForm:
    """x = 2y − 1 的精確轉換；三元組約束原樣轉為 1 ≤ y_i + y_j + y_k ≤ 2"""
    ones = np.ones(p.m, dtype=np.int64)
    return QuboForm(
        quadratic=4 * p.q,
        linear=-4 * (p.q @ ones),
        constant=int(ones @ p.q @ ones),
        constraints=p.nae_constraints,
    )


def qubo_objective(form: QuboForm, y) -> int:
    vec = np.asarray(y, dtype=np.int64)
    return int(vec @ form.quadratic @ vec + form.linear @ vec + form.constant)


def spins_to_binary(x) -> tuple[int, ...]:
    return tuple((int(v) + 1) // 2 for v in x)


def binary_to_spins(y) -> tuple[int, ...]:
    return tuple(2 * int(v) - 1 for v in y)
