#!/usr/bin/env python3
"""Regenerates data/eval/ fixtures and their reference trec_eval values.

The run/qrels files are produced from a fixed seed; the measures come from
pytrec_eval, which wraps the reference trec_eval implementation. The
tables are written next to this script as eval_runs.inc / eval_topics.inc.
"""
import random
import pathlib
import pytrec_eval

root = pathlib.Path(__file__).resolve().parents[2] / "data" / "eval"
root.mkdir(parents=True, exist_ok=True)
rng = random.Random(20121219)

topics = [126, 127, 133, 138, 139, 146, 163, 169, 174]
docs = [f"FX-{i:03d}" for i in range(120)]

qrels = {}
lines = []
for t in topics:
    judged = rng.sample(docs, 30)
    n_rel = rng.randint(1, 9)
    qrels[str(t)] = {}
    for i, d in enumerate(judged):
        grade = (rng.choice([1, 1, 2]) if i < n_rel else 0)
        qrels[str(t)][d] = grade
        lines.append(f"{t} 0 {d} {grade}")
(root / "qrels.txt").write_text("\n".join(lines) + "\n")

def make_run(name, depth, skill):
    run = {}
    out = []
    for t in topics + [999]:  # 999 has no judgments: both tools skip it
        pool = list(docs)
        rels = [d for d, g in qrels.get(str(t), {}).items() if g > 0]
        rng.shuffle(pool)
        # Pull some relevant documents towards the top.
        for d in rels:
            if rng.random() < skill:
                pool.remove(d)
                pool.insert(rng.randint(0, 15), d)
        ranked = pool[: rng.randint(depth // 2, depth)]
        scores = sorted(rng.sample(range(10_000, 99_999), len(ranked)), reverse=True)
        run[str(t)] = {}
        for rank, (d, s) in enumerate(zip(ranked, scores), start=1):
            score = s / 1000.0
            run[str(t)][d] = score
            out.append(f"{t} Q0 {d} {rank} {score:.4f} {name}")
    (root / f"{name}.run").write_text("\n".join(out) + "\n")
    return run

runs = {"baseline": make_run("baseline", 60, 0.3),
        "variant": make_run("variant", 60, 0.6),
        "shallow": make_run("shallow", 12, 0.5)}

measures = {"map", "num_rel", "num_rel_ret", "num_ret"}
evaluator = pytrec_eval.RelevanceEvaluator(qrels, measures)
run_rows, topic_rows = [], []
for name, run in runs.items():
    res = evaluator.evaluate({t: d for t, d in run.items() if t in qrels})
    agg = {m: pytrec_eval.compute_aggregated_measure(m, [r[m] for r in res.values()]) for m in measures}
    run_rows.append(f'{{"{name}", {agg["map"]:.10f}, {int(agg["num_rel"])}, {int(agg["num_rel_ret"])}, {int(agg["num_ret"])}}},')
    for t in sorted(res, key=int):
        topic_rows.append(f'{{"{name}", {t}, {res[t]["map"]:.10f}, {int(res[t]["num_rel"])}, {int(res[t]["num_rel_ret"])}}},')

header = "// Reference trec_eval values for data/eval/*.run against data/eval/qrels.txt.\n" \
         "// Generated by tests/golden/make_eval_fixtures.py (pytrec_eval).\n"
out = pathlib.Path(__file__).resolve().parent
(out / "eval_runs.inc").write_text(header + "// run, map, num_rel, num_rel_ret, num_ret\n" + "\n".join(run_rows) + "\n")
(out / "eval_topics.inc").write_text(header + "// run, topic, ap, num_rel, num_rel_ret\n" + "\n".join(topic_rows) + "\n")
