"""Print the reference query corpus with and without load-time expansion.

For every query the top-level output is shown once, followed by the
step/cell/choicepoint counters of both modes, so the effect of specializing
``if_(A = B, ...)`` can be read off directly.
"""

import io
import sys

from reif.cli import CliConfig, cmd_run

QUERIES = [
    "member(1, [1,2,3,4,5]).",
    "member(1, [1,2,1,4,5]).",
    "member(1, [1,X]).",
    "member(1, [X,1]).",
    "memberd_dif(1, [1,2,3]).",
    "memberd(1, [1,X]).",
    "memberd(1, [X,1]).",
    "memberd(1, [1,2,3]).",
    "tfilter(=(X), [1,2,3,2,3,3], Fs).",
    "duplicate(X, [1,2,3,2,3,3]).",
    "firstduplicate(1, [1,2,3,1]).",
    "firstduplicate(X, [1,2,2,1]).",
    "firstduplicate(X, [A,B,C]).",
    "memberd_t(1, [1|non_list], T).",
    "memberd_t(X, non_list, T).",
    "treememberd_t(E, t(a, t(b,nil,nil), nil), T).",
]


def run(query: str, expand: bool) -> tuple[str, str]:
    out = io.StringIO()
    cmd_run(CliConfig(query=query, expand=expand, stats=True), out, sys.stderr)
    *answers, stats = out.getvalue().splitlines()
    return "\n".join(answers), stats


def main() -> int:
    for q in QUERIES:
        plain, s_plain = run(q, False)
        fast, s_fast = run(q, True)
        print(f"?- {q}")
        print(plain)
        if fast != plain:
            print("   (expanded output differs!)")
            print(fast)
        print(f"   plain    {s_plain}")
        print(f"   expanded {s_fast}")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
