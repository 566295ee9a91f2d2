import json
from pathlib import Path

import click

from util.cli import graph_source, handle_errors, load_source


@click.command("run", help="對單一圖執行 QCBO → 部分定向 → 補全 → 驗證")
@graph_source
@click.option("--spins", help="以空白分隔的 ±1 自旋向量，略過求解器")
@click.option("--optimize", is_flag=True, help="求 xᵀQx 的最小值，而不只是可行解")
@click.option("--exhaustive", is_flag=True, help="QCBO 不可行時對線圖做窮舉 3-STO 搜尋")
@click.option("--emit-dot", is_flag=True, help="輸出圖、線圖、部分定向、最終定向四個 DOT 檔")
@click.option("--lp", "emit_lp", is_flag=True, help="輸出 QUBO 形式的 LP 檔")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), help="決策紀錄 JSON 輸出路徑")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--solver-budget", type=int, help="QCBO 求解節點預算")
@click.option("--search-budget", type=int, help="窮舉搜尋節點預算")
@handle_errors
def run_graph(catalog_name, params, file_path, spins, optimize, exhaustive, emit_dot, emit_lp,
              json_out, out_dir, solver_budget, search_budget):
    from functions.completion import decide_line_graph_3sto, decide_with_spins
    from functions.experiment import GraphRequest, decision_row, sto_expected
    from functions.graph_core import line_graph_dot, to_dot
    from functions.qcbo import build_qcbo
    from functions.qcbo_io import export_lp
    from util.log import ok, saved, start, warn

    g = load_source(catalog_name, params, file_path)
    start(f"{g.name}: {g.n} 個頂點、{g.m} 條邊")

    if spins:
        try:
            vector = [int(v) for v in spins.split()]
        except ValueError:
            raise ValueError(f"自旋向量只能包含整數: {spins!r}") from None
        record = decide_with_spins(g, vector, search_budget=search_budget)
    else:
        record = decide_line_graph_3sto(g, optimize=optimize, search_infeasible=exhaustive,
                                        solver_budget=solver_budget, search_budget=search_budget)

    request = GraphRequest(catalog_name.lower() if catalog_name else g.name, tuple(params))
    row = decision_row(g.name, g, record, sto_expected(request))
    ok(f"QCBO {record.qcbo_status.value}，3-STO 驗證 {record.verified_3sto}，方法 {record.method}")

    out = Path(out_dir)
    if emit_dot:
        out.mkdir(parents=True, exist_ok=True)
        panels = {
            "graph": to_dot(g, name="G"),
            "line": line_graph_dot(g),
            "partial": record.partial.to_dot(name="partial") if record.partial else None,
            "final": record.orientation.to_dot(name="final") if record.orientation else None,
        }
        for panel, text in panels.items():
            if text is None:
                warn(f"沒有 {panel} 定向可輸出")
                continue
            target = out / f"{g.name}_{panel}.dot"
            target.write_text(text, encoding="utf-8")
            saved(target)

    if emit_lp:
        out.mkdir(parents=True, exist_ok=True)
        target = out / f"{g.name}.lp"
        target.write_text(export_lp(build_qcbo(g), name=g.name), encoding="utf-8")
        saved(target)

    document = {"row": row.to_dict(), "record": record.to_json_dict()}
    text = json.dumps(document, ensure_ascii=False, indent=2)
    if json_out:
        Path(json_out).parent.mkdir(parents=True, exist_ok=True)
        Path(json_out).write_text(text + "\n", encoding="utf-8")
        saved(json_out)
    click.echo(text)
