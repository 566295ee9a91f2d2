"""
QCBO 問題的檔案格式
1. JSON：矩陣以稀疏三元組 [i, j, q_ij] (i ≤ j) 儲存，約束為索引三元組
2. LP 文字：QUBO 形式 (二次目標、每個約束一條 1 <= ... <= 2、二元變數 y0 … y(m−1))
"""

import json
import re

import numpy as np

from functions.qcbo import QcboProblem, QuboForm, to_qubo


class LpFormatError(ValueError):
    """LP 文字無法解析"""


# ============ JSON ============

def problem_to_json(p: QcboProblem, indent: int | None = 2) -> str:
    entries = [[i, j, int(p.q[i, j])] for i in range(p.m) for j in range(i, p.m) if p.q[i, j] != 0]
    doc = {
        "format": "qcbo",
        "m": p.m,
        "q": entries,
        "constraints": [list(t) for t in p.nae_constraints],
    }
    return json.dumps(doc, indent=indent)


def problem_from_json(text: str) -> QcboProblem:
    doc = json.loads(text)
    if doc.get("format") != "qcbo":
        raise ValueError("不是 QCBO 問題文件")
    m = int(doc["m"])
    q = np.zeros((m, m), dtype=np.int64)
    for i, j, value in doc["q"]:
        q[i, j] = q[j, i] = value
    return QcboProblem(q, tuple(tuple(t) for t in doc["constraints"]))


# ============ LP ============

def _signed(coef: int, body: str) -> str:
    sign = "-" if coef < 0 else "+"
    return f"{sign} {abs(coef)} {body}".rstrip()


def export_lp(p: QcboProblem, name: str = "qcbo") -> str:
    """
    以 LP 文字格式輸出 QUBO 形式 (x = 2y − 1)。二次項寫成 [ ... ] / 2，
    所以 y_i * y_j (i < j) 的係數是 2 × 8 q_ij。
    """
    form = to_qubo(p)
    m = form.m

    linear_terms = [_signed(form.constant, "")] if form.constant else []
    linear_terms += [_signed(int(form.linear[i]), f"y{i}") for i in range(m) if form.linear[i] != 0]
    if not linear_terms:
        linear_terms = ["+ 0 y0"] if m else ["+ 0"]

    quad_terms = []
    for i in range(m):
        if form.quadratic[i, i] != 0:
            quad_terms.append(_signed(2 * int(form.quadratic[i, i]), f"y{i} ^2"))
        for j in range(i + 1, m):
            if form.quadratic[i, j] != 0:
                quad_terms.append(_signed(4 * int(form.quadratic[i, j]), f"y{i} * y{j}"))

    objective = " obj: " + " ".join(linear_terms)
    if quad_terms:
        objective += " + [ " + " ".join(quad_terms) + " ] / 2"

    out = [f"\\ {name}: QUBO form of the not-all-equal QCBO", "Minimize", objective, "Subject To"]
    for r, (i, j, k) in enumerate(form.constraints):
        out.append(f" nae{r}: 1 <= y{i} + y{j} + y{k} <= 2")
    out.append("Binaries")
    if m:
        out.append(" " + " ".join(f"y{i}" for i in range(m)))
    out.append("End")
    return "\n".join(out) + "\n"


_VAR = re.compile(r"^y(\d+)$")
_ROW = re.compile(r"^\s*\w+:\s*1\s*<=\s*y(\d+)\s*\+\s*y(\d+)\s*\+\s*y(\d+)\s*<=\s*2\s*$")


def _parse_terms(tokens: list[str], m: int, quadratic: np.ndarray, linear: np.ndarray, scale: int) -> int:
    """解析目標函數的項；回傳常數項。scale 為二次區段的除數"""
    constant = 0
    sign = 1
    pos = 0
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in ("+", "-"):
            sign = 1 if tok == "+" else -1
            pos += 1
            continue
        coef = 1
        if not _VAR.match(tok):
            try:
                coef = int(tok)
            except ValueError:
                raise LpFormatError(f"無法解析的項: {tok!r}") from None
            pos += 1
            if pos >= len(tokens) or not _VAR.match(tokens[pos]):
                constant += sign * coef
                sign = 1
                continue
        i = int(_VAR.match(tokens[pos]).group(1))
        pos += 1
        if pos < len(tokens) and tokens[pos] == "^2":
            quadratic[i, i] += sign * coef // scale
            pos += 1
        elif pos + 1 < len(tokens) and tokens[pos] == "*":
            j = int(_VAR.match(tokens[pos + 1]).group(1))
            value = sign * coef // scale
            quadratic[i, j] += value // 2
            quadratic[j, i] += value // 2
            pos += 2
        else:
            linear[i] += sign * coef
        sign = 1
    return constant


def read_lp(text: str) -> QuboForm:
    """讀回 export_lp 的輸出，重建 QuboForm (係數精確還原)"""
    lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("\\")]
    sections: dict[str, list[str]] = {}
    current = None
    for line in lines:
        key = line.strip().lower()
        if key in ("minimize", "subject to", "binaries", "end"):
            current = key
            sections.setdefault(current, [])
            continue
        if current is None:
            raise LpFormatError(f"區段外的內容: {line!r}")
        sections[current].append(line)

    names = " ".join(sections.get("binaries", [])).split()
    m = len(names)
    quadratic = np.zeros((m, m), dtype=np.int64)
    linear = np.zeros(m, dtype=np.int64)

    objective = " ".join(sections.get("minimize", [])).strip()
    if objective.startswith("obj:"):
        objective = objective[len("obj:"):]
    constant = 0
    if "[" in objective:
        head, rest = objective.split("[", 1)
        body, tail = rest.split("]", 1)
        if tail.strip() != "/ 2":
            raise LpFormatError(f"二次區段必須以 '/ 2' 結尾: {tail!r}")
        sign = -1 if head.rstrip().endswith("-") else 1
        head = head.rstrip()[:-1] if head.rstrip()[-1:] in "+-" else head
        constant += _parse_terms(head.split(), m, quadratic, linear, 1)
        quad_tokens = body.split()
        if sign < 0:
            quad_tokens = ["-"] + quad_tokens if quad_tokens and quad_tokens[0] not in "+-" else quad_tokens
        constant += _parse_terms(quad_tokens, m, quadratic, linear, 2)
    else:
        constant += _parse_terms(objective.split(), m, quadratic, linear, 1)

    constraints = []
    for row in sections.get("subject to", []):
        match = _ROW.match(row)
        if match is None:
            raise LpFormatError(f"無法解析的約束列: {row!r}")
        constraints.append(tuple(int(g) for g in match.groups()))

    return QuboForm(quadratic, linear, int(constant), tuple(constraints))
