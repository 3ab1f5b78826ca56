import numpy as np

from conemoea.cli import main
from conemoea.bench import read_records


def test_single_writes_front_and_metrics(tmp_path, capsys):
    rc = main([
        "single", "--problem", "deb52", "--algorithm", "coneepsmoea",
        "--evals", "400", "--pop-size", "16", "--epsilon", "0.02,0.02",
        "--kappa", "0.5", "--seed", "3", "--out", str(tmp_path),
    ])
    assert rc == 0
    out = capsys.readouterr().out
    assert "gamma=" in out and "hv=" in out
    front_path = tmp_path / "deb52_CONEEPSMOEA_seed3.front"
    assert front_path.exists()
    rows = np.loadtxt(front_path, ndmin=2)
    assert rows.shape[1] == 2


def test_run_and_rank_pipeline(tmp_path, capsys):
    config = tmp_path / "exp.ini"
    config.write_text(
        "[campaign]\n"
        "runs = 2\n"
        "base_seed = 1\n"
        f"out_dir = {tmp_path / 'out'}\n"
        "front_count = 400\n"
        "\n"
        "[cell:deb52/NSGA2]\n"
        "budget = 200\n"
        "pop_size = 10\n"
        "\n"
        "[cell:deb52/EPSMOEA]\n"
        "budget = 200\n"
        "pop_size = 10\n"
        "epsilon = 0.02 0.02\n"
    )
    rc = main(["run", "--config", str(config)])
    assert rc == 0
    results = tmp_path / "out" / "results.csv"
    assert results.exists()
    records = read_records(results)
    assert len(records) == 4
    capsys.readouterr()

    rc = main(["rank", "--results", str(results)])
    assert rc == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0].startswith("algorithm,")
    assert len(lines) == 3


def test_metrics_recompute(tmp_path, capsys):
    front = tmp_path / "points.front"
    front.write_text("0.2 0.9\n0.8 0.3\n")
    rc = main(["metrics", "--problem", "zdt1", "--count", "500", str(front)])
    assert rc == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == "front,cardinality,gamma,delta,hv"
    assert lines[1].startswith(str(front))
    assert len(lines[1].split(",")) == 5


def test_run_worker_pool(tmp_path):
    config = tmp_path / "exp.ini"
    config.write_text(
        "[campaign]\n"
        "runs = 2\n"
        "workers = 2\n"
        f"out_dir = {tmp_path / 'out'}\n"
        "front_count = 300\n"
        "\n"
        "[cell:deb52/NSGA2]\n"
        "budget = 100\n"
        "pop_size = 10\n"
        "\n"
        "[cell:deb52/CONEEPSMOEA]\n"
        "budget = 100\n"
        "pop_size = 10\n"
    )
    rc = main(["run", "--config", str(config)])
    assert rc == 0
    records = read_records(tmp_path / "out" / "results.csv")
    assert len(records) == 4
    assert all(r.gamma is not None for r in records)
