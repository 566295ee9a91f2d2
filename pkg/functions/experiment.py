"""
實驗表格：每張圖一列 (圖的特徵 + QCBO 是否可解 + 定向是否通過驗證)
run 與 table 兩個指令共用這裡的列型別與執行流程。
"""

from dataclasses import asdict, dataclass
from enum import Enum

import pandas as pd
from joblib import Parallel, delayed

from functions.catalog import resolve_graph
from functions.completion import DecisionRecord, decide_line_graph_3sto
from functions.graph_core import Graph, graph_stats
from functions.qcbo import QcboStatus
from util.log import ok, start


class StoExpected(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class GraphRequest:
    """表格中的一個請求：目錄或資料圖名稱加參數"""
    name: str
    params: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "GraphRequest":
        """"wheel:5"、"hex_lattice:2,3" 或單純的 "petersen" """
        name, _, rest = text.strip().partition(":")
        if not name:
            raise ValueError(f"空的圖名稱: {text!r}")
        try:
            params = tuple(int(p) for p in rest.split(",") if p.strip())
        except ValueError:
            raise ValueError(f"參數必須是整數: {text!r}") from None
        return cls(name.lower(), params)

    def label(self) -> str:
        return self.name if not self.params else f"{self.name}:{','.join(map(str, self.params))}"


DEFAULT_SUBSET = (
    GraphRequest("path", (5,)),
    GraphRequest("cycle", (5,)),
    GraphRequest("wheel", (4,)),
    GraphRequest("wheel", (5,)),
    GraphRequest("wheel", (6,)),
    GraphRequest("hex_lattice", (2, 3)),
    GraphRequest("tutte"),
    GraphRequest("goldner_harary"),
    GraphRequest("herschel"),
    GraphRequest("medial_herschel"),
    GraphRequest("petersen"),
) + tuple(GraphRequest("complete", (n,)) for n in range(3, 8))


def sto_expected(request: GraphRequest) -> StoExpected:
    """已知的「原圖是否半遞移可定向」結論；沒有公認結論時為 unknown"""
    name, params = request.name, request.params
    if name in ("path", "cycle", "complete", "empty", "star", "k4", "k4_broken", "petersen",
                "tutte", "herschel", "medial_herschel", "hex_lattice", "j4"):
        return StoExpected.YES
    if name == "wheel" and params:
        # 奇數輪 W_k (k ≥ 5) 不可表示；W_3 = K_4
        return StoExpected.NO if params[0] % 2 == 1 and params[0] >= 5 else StoExpected.YES
    if name in ("t1", "t2", "graph_a"):
        return StoExpected.NO
    return StoExpected.UNKNOWN


@dataclass(frozen=True)
class DecisionRow:
    name: str
    nodes: int
    edges: int
    chromatic_info: str
    max_degree: int
    sto_expected: StoExpected
    qcbo_status: str
    qcbo_solvable: bool
    verified_3sto: bool
    conjecture_degree_le_4: bool
    elapsed_ms: float

    def to_dict(self) -> dict:
        row = asdict(self)
        row["sto_expected"] = self.sto_expected.value
        return row


COLUMNS = tuple(DecisionRow.__dataclass_fields__)


def decision_row(name: str, g: Graph, record: DecisionRecord, expected: StoExpected) -> DecisionRow:
    stats = graph_stats(g)
    return DecisionRow(
        name=name,
        nodes=g.n,
        edges=g.m,
        chromatic_info=stats.chromatic_info,
        max_degree=stats.max_degree,
        sto_expected=expected,
        qcbo_status=record.qcbo_status.value,
        qcbo_solvable=record.qcbo_status is QcboStatus.FEASIBLE,
        verified_3sto=record.verified_3sto,
        conjecture_degree_le_4=stats.max_degree <= 4,
        elapsed_ms=record.elapsed_ms,
    )


def run_request(request: GraphRequest, g: Graph, solver_budget: int | None = None,
                search_budget: int | None = None) -> DecisionRow:
    start(f"{request.label()}: {g.n} 個頂點、{g.m} 條邊")
    record = decide_line_graph_3sto(g, solver_budget=solver_budget, search_budget=search_budget)
    row = decision_row(request.label(), g, record, sto_expected(request))
    ok(f"{request.label()}: QCBO {row.qcbo_status}, 3-STO 驗證 {row.verified_3sto}")
    return row


def run_table(requests, jobs: int = 1, solver_budget: int | None = None,
              search_budget: int | None = None, config_path=None) -> list[DecisionRow]:
    """
    依請求順序回傳每一列。jobs > 1 時以 joblib 多行程並行，輸出順序不變。
    圖無法建立時 (未知名稱、缺檔) 直接拋出例外，不產生部分表格。
    """
    requests = list(requests)
    graphs = [resolve_graph(r.name, list(r.params), config_path) for r in requests]
    if jobs <= 1:
        return [run_request(r, g, solver_budget, search_budget) for r, g in zip(requests, graphs)]
    work = [delayed(run_request)(r, g, solver_budget, search_budget) for r, g in zip(requests, graphs)]
    return list(Parallel(n_jobs=jobs)(work))


def rows_to_frame(rows: list[DecisionRow]) -> pd.DataFrame:
    return pd.DataFrame([r.to_dict() for r in rows], columns=list(COLUMNS))


def frame_to_text(frame: pd.DataFrame) -> str:
    """對齊的純文字表格；沒有列時只輸出表頭"""
    if frame.empty:
        return "  ".join(frame.columns)
    return frame.to_string(index=False)
