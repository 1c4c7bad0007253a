"""Adapter for an external LTL satisfiability solver.

Protocol: one prefix-encoded formula per line on the solver's stdin, one
answer per line on its stdout, exactly ``sat``, ``unsat`` or ``timeout``.
Access to the subprocess is serialized with a lock so a single adapter can be
shared between labeling workers.
"""

from __future__ import annotations

import subprocess
import threading

from ..formula import Formula, print_prefix
from . import OracleError, SatVerdict

_ANSWERS = {"sat", "unsat", "timeout"}


class ExternalSolverError(OracleError):
    pass


class ExternalSolver:
    def __init__(self, command):
        self.command = list(command)
        self._lock = threading.Lock()
        self._proc = None

    def _ensure(self):
        if self._proc is None or self._proc.poll() is not None:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        return self._proc

    def __call__(self, phi: Formula) -> SatVerdict:
        line = " ".join(print_prefix(phi))
        with self._lock:
            proc = self._ensure()
            try:
                proc.stdin.write(line + "\n")
                proc.stdin.flush()
                answer = proc.stdout.readline()
            except (BrokenPipeError, OSError) as exc:
                raise ExternalSolverError(f"solver process died: {exc}") from exc
        answer = answer.strip()
        if answer not in _ANSWERS:
            raise ExternalSolverError(f"solver answered {answer!r}, expected sat/unsat/timeout")
        return SatVerdict(answer, None, "external")

    def close(self):
        with self._lock:
            if self._proc is not None and self._proc.poll() is None:
                self._proc.stdin.close()
                self._proc.wait(timeout=5)
            self._proc = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
