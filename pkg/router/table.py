import json
from pathlib import Path

import click

from util.cli import handle_errors


@click.command("table", help="重現決策表：每張圖的特徵、QCBO 是否可解、3-STO 驗證")
@click.option("--only", help="以空白分隔的圖，例如 'petersen wheel:5 hex_lattice:2,3'；空字串代表不跑任何圖")
@click.option("--csv", "csv_out", type=click.Path(dir_okay=False), help="CSV 輸出路徑")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), help="JSON 輸出路徑")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="並行的圖工作數")
@click.option("--solver-budget", type=int, help="QCBO 求解節點預算")
@click.option("--search-budget", type=int, help="窮舉搜尋節點預算")
@handle_errors
def decision_table(only, csv_out, json_out, jobs, solver_budget, search_budget):
    from functions.experiment import DEFAULT_SUBSET, GraphRequest, frame_to_text, rows_to_frame, run_table
    from util.log import ok, saved
    from util.nowtime import Stopwatch

    requests = DEFAULT_SUBSET if only is None else [GraphRequest.parse(t) for t in only.split()]
    watch = Stopwatch()
    rows = run_table(requests, jobs=jobs, solver_budget=solver_budget, search_budget=search_budget)
    frame = rows_to_frame(rows)
    ok(f"共 {len(rows)} 列，耗時 {watch.elapsed_ms():.0f} ms")

    if csv_out:
        Path(csv_out).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(csv_out, index=False)
        saved(csv_out)
    if json_out:
        Path(json_out).parent.mkdir(parents=True, exist_ok=True)
        Path(json_out).write_text(
            json.dumps([r.to_dict() for r in rows], ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        saved(json_out)
    click.echo(frame_to_text(frame))
