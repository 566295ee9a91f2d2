import click

from util.cli import graph_source, handle_errors, load_source


def _format_pairs(pairs) -> str:
    return ", ".join(f"{{{a},{b}}}" for a, b in pairs) if pairs else "(無)"


@click.command("verify", help="檢查字是否表示圖；未給字時搜尋 k-均勻表示字")
@click.argument("word_file", type=click.Path(exists=True, dir_okay=False), required=False)
@graph_source
@click.option("--uniform-k", type=int, help="搜尋時每個字母的出現次數 (預設 UNIFORM_K)")
@click.option("--max-letters", type=int, help="搜尋的字母總數上限 (預設 WORD_MAX_LETTERS)")
@handle_errors
def verify_word(word_file, catalog_name, params, file_path, uniform_k, max_letters):
    from functions.words import alternation_diff, format_word, parse_word, search_representant, word_represents
    from util.config import env
    from util.log import ok, start, warn

    g = load_source(catalog_name, params, file_path)

    if word_file is None:
        k = uniform_k if uniform_k is not None else env.UNIFORM_K
        start(f"{g.name}: 搜尋 {k}-均勻表示字")
        word = search_representant(g, k, max_letters=max_letters)
        if word is None:
            warn(f"{g.name} 沒有 {k}-均勻表示字")
            click.echo("word: none")
        else:
            ok(f"找到 {len(word)} 個字母的表示字")
            click.echo(f"word: {format_word(word)}")
        return

    with open(word_file, "r", encoding="utf-8") as f:
        word = parse_word(f.read())
    represents = word_represents(word, g)
    click.echo(f"represents: {str(represents).lower()}")
    if not represents:
        missing, extra = alternation_diff(word, g)
        click.echo(f"missing: {_format_pairs(missing)}")
        click.echo(f"extra: {_format_pairs(extra)}")
