import importlib.util
from pathlib import Path

SCRIPT = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"


def test_benchmark_quick_run(capsys):
    spec = importlib.util.spec_from_file_location("bench_kernels", SCRIPT)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    results = mod.main(["--quick", "--repeat", "1"])
    out = capsys.readouterr().out
    assert "workload" in out and len(results) >= 4
    assert all(t >= 0 for best in results.values() for t in best.values())
