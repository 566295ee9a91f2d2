from dotenv import load_dotenv, find_dotenv
from pathlib import Path
import os

import yaml

# 自動尋找專案根目錄的 .env
load_dotenv(find_dotenv(usecwd=True), override=False)

BASE_DIR = Path(__file__).resolve().parent.parent

# 可由設定檔指定的資料圖名稱
DATA_FILE_NAMES = ("graph_a", "t1", "t2", "j4", "medial_herschel")


# 統一管理環境變數
class Env:
    WR_DATA_DIR: str = os.getenv("WR_DATA_DIR") or str(BASE_DIR / "dataStore")
    WR_CONFIG: str = os.getenv("WR_CONFIG", "")
    SOLVER_BUDGET: int = int(os.getenv("SOLVER_BUDGET", 2_000_000))
    SEARCH_BUDGET: int = int(os.getenv("SEARCH_BUDGET", 5_000_000))
    SEARCH_MAX_EDGES: int = int(os.getenv("SEARCH_MAX_EDGES", 24))
    COMPLETION_BUDGET: int = int(os.getenv("COMPLETION_BUDGET", 200_000))
    CHROMATIC_BUDGET: int = int(os.getenv("CHROMATIC_BUDGET", 200_000))
    WORD_MAX_LETTERS: int = int(os.getenv("WORD_MAX_LETTERS", 14))
    UNIFORM_K: int = int(os.getenv("UNIFORM_K", 2))
    TIMEZONE: str = os.getenv("TIMEZONE", "Asia/Taipei")
    VERBOSE: bool = os.getenv("VERBOSE", "").lower() == "true"

    @property
    def data_dir(self) -> Path:
        return Path(self.WR_DATA_DIR)

    @property
    def config_path(self) -> Path:
        if self.WR_CONFIG:
            return Path(self.WR_CONFIG)
        return self.data_dir / "datafiles.yaml"


env = Env()


def load_data_files(config_path: Path | None = None) -> dict[str, Path]:
    """
    讀取資料圖設定檔 (YAML)，回傳 名稱 → 邊列表路徑。
    Args:
        config_path (Path | None): 設定檔路徑，預設為 env.config_path。
    Returns:
        dict[str, Path]: 相對路徑以設定檔所在目錄解析；設定檔不存在時回傳空字典。
    """
    from util.log import warn

    path = Path(config_path) if config_path else env.config_path
    if not path.exists():
        return {}

    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}

    files = {}
    for name, value in raw.items():
        if name not in DATA_FILE_NAMES:
            warn(f"設定檔中的未知資料名稱已忽略: {name}")
            continue
        if not value:
            continue
        file_path = Path(value)
        if not file_path.is_absolute():
            file_path = path.parent / file_path
        files[name] = file_path
    return files
