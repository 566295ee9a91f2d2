"""
字表示 (word-representability)
字母 x, y 在 w 中交替：刪去其他字母後成為 xyxy… 或 yxyx…。
字母表依排序對應到圖的頂點 0..n−1 (第 i 小的字母 ↔ 頂點 i)。
"""

from dataclasses import dataclass
from itertools import combinations

from functions.graph_core import Graph
from functions.orient import BoundExceededError
from util.config import env
from util.log import debug


class AlphabetError(ValueError):
    """字母不在字母表中，或字母表與圖的頂點數不符"""


class WordFormatError(ValueError):
    """字的文字格式錯誤"""


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    alphabet: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        alphabet = tuple(sorted(set(int(a) for a in self.alphabet))) if self.alphabet else tuple(sorted(set(letters)))
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "alphabet", alphabet)
        allowed = set(alphabet)
        stray = sorted(set(letters) - allowed)
        if stray:
            raise AlphabetError(f"字母不在字母表中: {stray}")
        unused = sorted(allowed - set(letters))
        if unused:
            raise AlphabetError(f"字母表中的符號未出現在字中: {unused}")

    @classmethod
    def from_string(cls, text: str, alphabet=()) -> "Word":
        """以空白分隔的十進位 id；沒有空白時每個字元是一個個位數字母"""
        stripped = text.strip()
        tokens = stripped.split() if any(ch.isspace() for ch in stripped) else list(stripped)
        try:
            letters = tuple(int(tok) for tok in tokens)
        except ValueError:
            raise WordFormatError(f"字只能包含十進位字母: {text!r}") from None
        return cls(letters, tuple(alphabet))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def reversed(self) -> "Word":
        return Word(self.letters[::-1], self.alphabet)


def parse_word(text: str, alphabet=()) -> Word:
    return Word.from_string(text, alphabet)


def format_word(w: Word) -> str:
    return " ".join(str(a) for a in w.letters)


def alternates(w: Word, x: int, y: int) -> bool:
    """
    x 與 y 是否在 w 中交替。
    Raises:
        AlphabetError: x 或 y 不在字母表中。
        ValueError: x == y。
    """
    if x == y:
        raise ValueError("alternates 需要兩個不同的字母")
    for letter in (x, y):
        if letter not in w.alphabet:
            raise AlphabetError(f"字母 {letter} 不在字母表中")
    previous = None
    for letter in w.letters:
        if letter != x and letter != y:
            continue
        if letter == previous:
            return False
        previous = letter
    return True


def alternation_graph(w: Word) -> Graph:
    """字母表上的圖，x, y 交替時相鄰；邊依字典序排列"""
    edges = [
        (i, j)
        for (i, x), (j, y) in combinations(enumerate(w.alphabet), 2)
        if alternates(w, x, y)
    ]
    return Graph(len(w.alphabet), tuple(edges))


def _check_alphabet(w: Word, g: Graph):
    if len(w.alphabet) != g.n:
        raise AlphabetError(f"字母表大小 {len(w.alphabet)} 與頂點數 {g.n} 不符")


def word_represents(w: Word, g: Graph) -> bool:
    _check_alphabet(w, g)
    return alternation_graph(w).same_edge_set(g)


def alternation_diff(w: Word, g: Graph) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """
    比較交替圖與 g，以字母標示。
    Returns:
        (missing, extra): g 有但不交替的邊、交替但 g 沒有的邊。
    """
    _check_alphabet(w, g)
    actual = set(alternation_graph(w).edges)
    expected = set(g.edges)
    label = w.alphabet
    missing = [(label[u], label[v]) for u, v in sorted(expected - actual)]
    extra = [(label[u], label[v]) for u, v in sorted(actual - expected)]
    return missing, extra


# ============ 均勻字搜尋 ============

def search_representant(g: Graph, k: int, max_letters: int | None = None) -> Word | None:
    """
    窮舉每個字母恰出現 k 次的字，找出表示 g 的字。
    均勻字的循環位移表示同一張圖，因此固定第一個字母為 0。
    None 只代表這個 k 沒有表示字，不是不可表示的證明。
    Raises:
        BoundExceededError: n·k 超過字母總數上限 (預設 env.WORD_MAX_LETTERS)。
    """
    if k < 1:
        raise ValueError("k 必須 ≥ 1")
    bound = max_letters if max_letters is not None else env.WORD_MAX_LETTERS
    n = g.n
    total = n * k
    if total > bound:
        raise BoundExceededError(f"n·k = {total} 超過字母總數上限 {bound}")
    if n == 0:
        return Word(())

    edge = [[False] * n for _ in range(n)]
    for u, v in g.edges:
        edge[u][v] = edge[v][u] = True

    counts = [0] * n
    last = [[-1] * n for _ in range(n)]      # last[a][b]：{a, b} 中最後放的字母
    broken = [[False] * n for _ in range(n)]
    word: list[int] = []
    nodes = 0

    def place(a: int, trail: list) -> bool:
        """放入字母 a；違反約束時回傳 False (已做的修改記在 trail)"""
        counts[a] += 1
        word.append(a)
        ok = True
        for b in range(n):
            if b == a:
                continue
            if last[a][b] == a and not broken[a][b]:
                trail.append(("broken", a, b))
                broken[a][b] = broken[b][a] = True
                if edge[a][b]:
                    ok = False
            trail.append(("last", a, b, last[a][b]))
            last[a][b] = last[b][a] = a
            if counts[a] == k and counts[b] == k and not edge[a][b] and not broken[a][b]:
                ok = False
        return ok

    def unplace(a: int, trail: list):
        while trail:
            entry = trail.pop()
            if entry[0] == "broken":
                _, x, y = entry
                broken[x][y] = broken[y][x] = False
            else:
                _, x, y, value = entry
                last[x][y] = last[y][x] = value
        counts[a] -= 1
        word.pop()

    def extend() -> bool:
        nonlocal nodes
        nodes += 1
        if len(word) == total:
            return True
        for a in range(n):
            if counts[a] == k:
                continue
            trail: list = []
            if place(a, trail) and extend():
                return True
            unplace(a, trail)
        return False

    trail: list = []
    found = place(0, trail) and extend()
    debug(f"均勻字搜尋 (k={k}) 節點數: {nodes}")
    if not found:
        return None
    return Word(tuple(word), tuple(range(n)))
