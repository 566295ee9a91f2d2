from pathlib import Path

import click

from util.cli import graph_source, handle_errors, load_source


@click.command("export-lp", help="輸出圖的 QCBO (LP 文字格式的 QUBO 形式，以及 JSON)")
@graph_source
@click.option("--out", "lp_out", type=click.Path(dir_okay=False), help="LP 輸出路徑 (預設 <圖名>.lp)")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), help="問題 JSON 輸出路徑")
@handle_errors
def export_problem(catalog_name, params, file_path, lp_out, json_out):
    from functions.qcbo import build_qcbo
    from functions.qcbo_io import export_lp, problem_to_json
    from util.log import saved

    g = load_source(catalog_name, params, file_path)
    problem = build_qcbo(g)

    target = Path(lp_out) if lp_out else Path(f"{g.name}.lp")
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(export_lp(problem, name=g.name), encoding="utf-8")
    saved(target)

    if json_out:
        Path(json_out).parent.mkdir(parents=True, exist_ok=True)
        Path(json_out).write_text(problem_to_json(problem) + "\n", encoding="utf-8")
        saved(json_out)
