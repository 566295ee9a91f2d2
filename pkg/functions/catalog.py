"""
具名圖目錄
重建實驗所用的圖 (路徑、環、星、輪、完全圖、Petersen、Tutte、Herschel、
Goldner-Harary、六角晶格)，以及由設定檔指向的資料圖 (graph_a、t1、t2、j4、
medial_herschel)。

除 k4_ordered 外，目錄圖的邊一律依 (min, max) 字典序排列。
"""

from itertools import combinations
from pathlib import Path
from typing import Callable

import networkx as nx

from functions.graph_core import Graph, InvalidGraphError, from_networkx, load_graph
from util.config import DATA_FILE_NAMES, env, load_data_files


class UnknownCatalogError(ValueError):
    """未知的目錄名稱"""


# K4 的固定邊順序，與已知的可行自旋向量對齊
K4_EDGE_ORDER = ((0, 1), (1, 2), (0, 3), (2, 3), (0, 2), (1, 3))

# 三稜柱：頂面 0,1,2，底面 3,4,5；面 6..10 依序為頂、底、三個側面
_PRISM_FACES = (
    (0, 1, 2),
    (3, 4, 5),
    (0, 1, 3, 4),
    (1, 2, 4, 5),
    (0, 2, 3, 5),
)


def _require(params: list[int], count: int, name: str, minimum: int = 0) -> list[int]:
    if len(params) != count:
        raise InvalidGraphError(f"{name} 需要 {count} 個參數，收到 {len(params)} 個")
    for p in params:
        if p < minimum:
            raise InvalidGraphError(f"{name} 的參數必須 ≥ {minimum}，收到 {p}")
    return params


def path(n: int) -> Graph:
    return from_networkx(nx.path_graph(n), name=f"path_{n}")


def cycle(n: int) -> Graph:
    return from_networkx(nx.cycle_graph(n), name=f"cycle_{n}")


def star(k: int) -> Graph:
    """中心 0，度數 k 的星圖 S_k (k+1 個頂點)"""
    return from_networkx(nx.star_graph(k), name=f"star_{k}")


def wheel(k: int) -> Graph:
    """輪圖 W_k：k 環加上一個連接所有環頂點的中心 (中心為頂點 0，共 k+1 個頂點)"""
    return from_networkx(nx.wheel_graph(k + 1), name=f"wheel_{k}")


def complete(n: int) -> Graph:
    return from_networkx(nx.complete_graph(n), name=f"complete_{n}")


def empty(n: int) -> Graph:
    return Graph(n, (), name=f"empty_{n}")


def k4_ordered() -> Graph:
    return Graph(4, K4_EDGE_ORDER, name="k4")


def k4_broken() -> Graph:
    """缺一條邊的 K4"""
    return Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)), name="k4_broken")


def petersen() -> Graph:
    return from_networkx(nx.petersen_graph(), name="petersen")


def tutte() -> Graph:
    return from_networkx(nx.tutte_graph(), name="tutte")


def herschel() -> Graph:
    """三稜柱的頂點–面關聯圖：11 個頂點、18 條邊、二分圖、最大度數 4"""
    edges = [(v, 6 + f) for f, face in enumerate(_PRISM_FACES) for v in face]
    return Graph(11, tuple(sorted(edges)), name="herschel")


def goldner_harary() -> Graph:
    """三角雙錐 (赤道 0,1,2、頂點 3,4) 的每個面內各加一個頂點：11 個頂點、27 條邊"""
    bipyramid = [(0, 1), (0, 2), (1, 2)] + [(v, apex) for apex in (3, 4) for v in (0, 1, 2)]
    faces = [(a, b, apex) for apex in (3, 4) for a, b in combinations((0, 1, 2), 2)]
    edges = list(bipyramid)
    for offset, face in enumerate(faces):
        edges.extend((v, 5 + offset) for v in face)
    return Graph(11, tuple(sorted(edges)), name="goldner_harary")


def hex_lattice(rows: int, cols: int) -> Graph:
    """
    networkx 六角晶格去掉排序最後的一個度數 2 角點；(2, 3) 得到 21 個頂點、25 條邊。
    """
    lattice = nx.hexagonal_lattice_graph(rows, cols, with_positions=False)
    corners = sorted(node for node, deg in lattice.degree() if deg == 2)
    if corners:
        lattice.remove_node(corners[-1])
    return from_networkx(lattice, name=f"hex_lattice_{rows}x{cols}")


# 名稱 → (建構函數, 參數個數, 最小參數值, 參數說明)
_BUILDERS: dict[str, tuple[Callable[..., Graph], int, int, str]] = {
    "path": (path, 1, 1, "n"),
    "cycle": (cycle, 1, 3, "n"),
    "star": (star, 1, 1, "k"),
    "wheel": (wheel, 1, 3, "k"),
    "complete": (complete, 1, 1, "n"),
    "empty": (empty, 1, 0, "n"),
    "k4": (k4_ordered, 0, 0, ""),
    "k4_broken": (k4_broken, 0, 0, ""),
    "petersen": (petersen, 0, 0, ""),
    "tutte": (tutte, 0, 0, ""),
    "herschel": (herschel, 0, 0, ""),
    "goldner_harary": (goldner_harary, 0, 0, ""),
    "hex_lattice": (hex_lattice, 2, 1, "rows cols"),
}


def catalog_names() -> dict[str, str]:
    """目錄名稱 → 參數說明"""
    return {name: entry[3] for name, entry in _BUILDERS.items()}


def catalog_build(name: str, params: list[int] | None = None) -> Graph:
    """
    依名稱建立目錄圖。
    Args:
        name (str): 目錄名稱。
        params (list[int] | None): 家族參數，例如 wheel 的 k。
    Returns:
        Graph
    Raises:
        UnknownCatalogError: 名稱不存在。
        InvalidGraphError: 參數個數或範圍不符。
    """
    params = list(params or [])
    key = name.lower()
    if key not in _BUILDERS:
        raise UnknownCatalogError(f"未知的目錄名稱: {name}")
    builder, count, minimum, _ = _BUILDERS[key]
    _require(params, count, key, minimum)
    return builder(*params)


def data_graph_path(name: str, config_path: Path | None = None) -> Path | None:
    """
    資料圖的檔案路徑；設定檔未列出時 medial_herschel 退回資料目錄內建檔案。
    """
    files = load_data_files(config_path)
    if name in files:
        return files[name]
    if name == "medial_herschel":
        default = env.data_dir / "medial_herschel.edges"
        return default if default.exists() else None
    return None


def load_data_graph(name: str, config_path: Path | None = None) -> Graph:
    if name not in DATA_FILE_NAMES:
        raise UnknownCatalogError(f"未知的資料圖名稱: {name}")
    file_path = data_graph_path(name, config_path)
    if file_path is None or not file_path.exists():
        raise FileNotFoundError(f"資料圖 {name} 的邊列表檔案不存在: {file_path}")
    return load_graph(file_path, name=name)


def resolve_graph(name: str, params: list[int] | None = None, config_path: Path | None = None) -> Graph:
    """目錄名稱或資料圖名稱皆可"""
    if name.lower() in DATA_FILE_NAMES:
        return load_data_graph(name.lower(), config_path)
    return catalog_build(name, params)
