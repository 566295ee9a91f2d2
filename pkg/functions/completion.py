"""
由 QCBO 自旋解產生線圖的 3-半遞移定向
流程：build_qcbo → solve_qcbo → 部分定向 → 補全 → 3-半遞移驗證 → 任意長度捷徑檢查
"""

from dataclasses import dataclass, field
from enum import Enum

import networkx as nx

from functions.graph_core import Graph, line_graph
from functions.orient import (
    ArcState,
    BoundExceededError,
    CyclicOrientationError,
    Direction,
    Orientation,
    exhaustive_orientation_search,
    find_shortcut,
    is_3_semi_transitive,
)
from functions.qcbo import QcboStatus, build_qcbo, check_solution, solve_qcbo, spin_objective
from util.config import env
from util.log import debug, start, warn
from util.nowtime import Stopwatch, getTimeString


@dataclass(frozen=True)
class PartialOrientation:
    """x_i ≠ x_j 的邊由 +1 (源) 指向 −1 (匯)；x_i = x_j 的邊保持無向"""
    orientation: Orientation
    spins: tuple[int, ...]


class CompletionStatus(str, Enum):
    COMPLETED = "completed"
    FAILED = "failed"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class CompletionResult:
    status: CompletionStatus
    orientation: Orientation | None = None
    nodes: int = 0

    @property
    def completed(self) -> bool:
        return self.status is CompletionStatus.COMPLETED


def partial_orientation_from_spins(lg: Graph, x) -> PartialOrientation:
    spins = tuple(int(v) for v in x)
    if len(spins) != lg.n:
        raise ValueError(f"自旋長度 {len(spins)} 與線圖頂點數 {lg.n} 不符")
    if any(v not in (-1, 1) for v in spins):
        raise ValueError("自旋只能是 −1 或 1")

    directions = []
    for i, j in lg.edges:
        if spins[i] == spins[j]:
            directions.append(Direction.UNDIRECTED)
        elif spins[i] == 1:
            directions.append(Direction.FORWARD)
        else:
            directions.append(Direction.BACKWARD)
    return PartialOrientation(Orientation(lg, tuple(directions)), spins)


def chord_rule_demands(state: ArcState, i: int, j: int) -> bool:
    """
    條件 (3)：((e_ik ∧ e_jk) ∨ (e_ki ∧ e_kj)) ∧ e_im ∧ e_mj 對某 k, m 成立時要求 i → j。
    e_im ∧ e_mj 表示 i → m → j 已存在，所以成立時必有 state.reaches(i, j)。
    """
    if not (state.out[i] & state.out[j]) and not (state.inn[i] & state.inn[j]):
        return False
    return any(j in state.out[mid] for mid in state.out[i])


class _BudgetExceeded(Exception):
    pass


def complete_orientation(partial: PartialOrientation | Orientation, strict: bool = False,
                         budget: int | None = None) -> CompletionResult:
    """
    依儲存順序處理無向邊：
    (a) 某一方向會形成有向環時選另一方向；
    (b) 否則若條件 (3) 成立則 i → j；
    (c) 否則預設由小索引指向大索引。
    兩個方向都會成環時，回溯到先前的預設選擇改走另一方向。
    strict=True 時，產生確定的長度 3 捷徑也視為衝突。
    Returns:
        CompletionResult: 完成時定向必定完整且無環；失敗不代表不存在補全。
    """
    orientation = partial.orientation if isinstance(partial, PartialOrientation) else partial
    if not nx.is_directed_acyclic_graph(orientation.to_digraph()):
        raise CyclicOrientationError("部分定向的有向部分含有環")

    state = ArcState(orientation)
    if strict and state.find_shortcut(max_len=3) is not None:
        return CompletionResult(CompletionStatus.FAILED, None, 0)
    base = orientation.base
    order = [i for i, d in enumerate(orientation.directions) if d is Direction.UNDIRECTED]
    remaining = budget if budget is not None else env.COMPLETION_BUDGET
    nodes = 0

    def candidates_at(pos: int) -> list[tuple[int, int]]:
        nonlocal nodes
        nodes += 1
        if nodes > remaining:
            raise _BudgetExceeded()
        u, v = base.edges[order[pos]]
        forward_cycles = state.reaches(v, u)
        backward_cycles = state.reaches(u, v)
        if forward_cycles and backward_cycles:
            return []
        if forward_cycles:
            return [(v, u)]
        if backward_cycles:
            # 條件 (3) 需要 u → m → v，已由此規則涵蓋
            return [(u, v)]
        return [(u, v), (v, u)]

    def search() -> bool:
        if not order:
            return True
        # 每層 [位置, 候選方向, 已試個數, 是否已定向]
        stack = [[0, candidates_at(0), 0, False]]
        while stack:
            frame = stack[-1]
            pos, options, tried, applied = frame
            index = order[pos]
            if applied:
                state.unorient(index)
                frame[3] = False
            if tried == len(options):
                stack.pop()
                continue
            frame[2] += 1
            tail, head = options[tried]
            state.orient(index, tail, head)
            frame[3] = True
            if strict and state.three_shortcut_through(tail, head):
                continue
            if pos + 1 == len(order):
                return True
            stack.append([pos + 1, candidates_at(pos + 1), 0, False])
        return False

    try:
        done = search()
    except _BudgetExceeded:
        return CompletionResult(CompletionStatus.BUDGET_EXCEEDED, None, nodes)
    if not done:
        return CompletionResult(CompletionStatus.FAILED, None, nodes)
    return CompletionResult(CompletionStatus.COMPLETED, state.to_orientation(), nodes)


# ============ 決策流程 ============

@dataclass
class DecisionRecord:
    graph_name: str
    n: int
    m: int
    qcbo_status: QcboStatus
    spins: tuple[int, ...] | None = None
    objective: int | None = None
    nodes_explored: int = 0
    partial: Orientation | None = None
    orientation: Orientation | None = None
    verified_3sto: bool = False
    verified_sto: bool = False
    certified_non_3sto: bool = False
    method: str = "none"
    elapsed_ms: float = 0.0
    timestamp: str = field(default="")

    def to_json_dict(self) -> dict:
        return {
            "graph_name": self.graph_name,
            "n": self.n,
            "m": self.m,
            "qcbo_status": self.qcbo_status.value,
            "spins": list(self.spins) if self.spins is not None else None,
            "objective": self.objective,
            "nodes_explored": self.nodes_explored,
            "partial_string": self.partial.to_string() if self.partial is not None else None,
            "orientation_string": self.orientation.to_string() if self.orientation is not None else None,
            "verified_3sto": self.verified_3sto,
            "verified_sto": self.verified_sto,
            "certified_non_3sto": self.certified_non_3sto,
            "method": self.method,
            "elapsed_ms": self.elapsed_ms,
            "timestamp": self.timestamp,
        }


def _exhaustive(lg: Graph, max_edges: int | None, budget: int | None) -> tuple[bool, Orientation | None]:
    """回傳 (是否在範圍內完成, 找到的定向)"""
    try:
        return True, exhaustive_orientation_search(lg, "3semi", max_edges=max_edges, budget=budget)
    except BoundExceededError as e:
        warn(f"窮舉 3-STO 搜尋略過: {e}")
        return False, None


def _certify(record: DecisionRecord, lg: Graph, spins, completion_budget: int | None,
             max_edges: int | None, search_budget: int | None):
    partial = partial_orientation_from_spins(lg, spins)
    record.partial = partial.orientation

    for method, strict in (("greedy", False), ("strict", True)):
        result = complete_orientation(partial, strict=strict, budget=completion_budget)
        debug(f"補全 ({method}): {result.status.value}, 節點數 {result.nodes}")
        if result.completed and is_3_semi_transitive(result.orientation):
            record.orientation = result.orientation
            record.method = method
            break
    else:
        start(f"{record.graph_name}: 補全未通過驗證，改用窮舉搜尋")
        finished, found = _exhaustive(lg, max_edges, search_budget)
        if found is not None:
            record.orientation = found
            record.method = "exhaustive"
        elif finished:
            record.certified_non_3sto = True

    if record.orientation is not None:
        record.verified_3sto = is_3_semi_transitive(record.orientation)
        record.verified_sto = record.verified_3sto and find_shortcut(record.orientation) is None


def decide_line_graph_3sto(g: Graph, optimize: bool = False, search_infeasible: bool = False,
                           solver_budget: int | None = None, completion_budget: int | None = None,
                           search_budget: int | None = None, max_edges: int | None = None) -> DecisionRecord:
    """
    判斷 L(g) 是否 3-半遞移可定向。verified_3sto 只在具體定向通過檢查時為 True；
    QCBO 不可行本身不會判定「非 3-STO」，只有窮舉搜尋能給出 certified_non_3sto。
    Args:
        g (Graph): 原圖 (至少一條邊)。
        optimize (bool): 是否求 xᵀQx 的最小值 (預設只求可行)。
        search_infeasible (bool): QCBO 不可行時是否對線圖做窮舉搜尋。
    """
    watch = Stopwatch()
    problem = build_qcbo(g)
    solution = solve_qcbo(problem, optimize=optimize, budget=solver_budget)
    lg = line_graph(g)

    record = DecisionRecord(
        graph_name=g.name,
        n=g.n,
        m=g.m,
        qcbo_status=solution.status,
        spins=solution.spins,
        objective=solution.objective,
        nodes_explored=solution.nodes_explored,
    )
    if solution.feasible:
        _certify(record, lg, solution.spins, completion_budget, max_edges, search_budget)
    elif search_infeasible:
        finished, found = _exhaustive(lg, max_edges, search_budget)
        if found is not None:
            record.orientation = found
            record.method = "exhaustive"
            record.verified_3sto = is_3_semi_transitive(found)
            record.verified_sto = record.verified_3sto and find_shortcut(found) is None
        elif finished:
            record.certified_non_3sto = True

    record.elapsed_ms = watch.elapsed_ms()
    record.timestamp = getTimeString()
    return record


def decide_with_spins(g: Graph, spins, completion_budget: int | None = None,
                      search_budget: int | None = None, max_edges: int | None = None) -> DecisionRecord:
    """以呼叫端提供的可行自旋向量 (例如已知的可行解) 執行後半段流程"""
    watch = Stopwatch()
    problem = build_qcbo(g)
    spins = tuple(int(v) for v in spins)
    if not check_solution(problem, spins):
        raise ValueError("提供的自旋向量不滿足 QCBO 約束")

    record = DecisionRecord(
        graph_name=g.name,
        n=g.n,
        m=g.m,
        qcbo_status=QcboStatus.FEASIBLE,
        spins=spins,
        objective=spin_objective(problem.q, spins),
    )
    _certify(record, line_graph(g), spins, completion_budget, max_edges, search_budget)
    record.elapsed_ms = watch.elapsed_ms()
    record.timestamp = getTimeString()
    return record
