import sys
from pathlib import Path

# 讓 functions / util / router 可從專案根目錄匯入
sys.path.insert(0, str(Path(__file__).resolve().parent))
