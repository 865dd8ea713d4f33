#!/usr/bin/env python3
"""Regenerates the handover-FSM conformance corpus in data/traces/.

The expected event logs come from a self-contained reference model of the
A3/TTT state machine written here, independently of the C++ implementation.
Each expected_NN.csv starts with a comment line carrying the configuration:
    # m_hyst_db t_ttt_ms t_mg_ms per_candidate
"""

import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "traces"


def fmt(x):
    # Match std::ofstream default formatting for the integral ms values used here.
    return str(int(x)) if float(x) == int(x) else repr(float(x))


def reference_fsm(samples, m_hyst, t_ttt, t_mg, per_candidate):
    """samples: list of (time_ms, [rsrp per cell]); first entry associates."""
    events = []
    serving = 0
    best0 = samples[0][1]
    for j in range(1, len(best0)):
        if best0[j] > best0[serving]:
            serving = j
    candidate = None
    elapsed = 0.0
    for time_ms, rsrps in samples[1:]:
        bar = rsrps[serving] + m_hyst
        best = None
        for j in range(len(rsrps)):
            if j == serving:
                continue
            if rsrps[j] > bar and (best is None or rsrps[j] > rsrps[best]):
                best = j
        if best is None:
            if candidate is not None:
                events.append((time_ms, "TTT_RESET", serving, candidate))
                candidate = None
                elapsed = 0.0
            continue
        if per_candidate and candidate is not None and rsrps[candidate] <= bar:
            events.append((time_ms, "TTT_RESET", serving, candidate))
            candidate = None
            elapsed = 0.0
        if candidate is None:
            candidate = best
            events.append((time_ms, "A3_ENTER", serving, best))
        elif not per_candidate:
            candidate = best
        elapsed += t_mg
        if elapsed >= t_ttt:
            target = candidate if per_candidate else best
            events.append((time_ms, "HANDOVER", serving, target))
            serving = target
            candidate = None
            elapsed = 0.0
    return events


def write_case(idx, samples, cell_ids, m_hyst, t_ttt, t_mg, per_candidate):
    trace = OUT / f"trace_{idx:02d}.csv"
    with trace.open("w") as f:
        f.write("time_ms,cell_id,rsrp_dbm\n")
        for time_ms, rsrps in samples:
            for cell, rsrp in zip(cell_ids, rsrps):
                f.write(f"{fmt(time_ms)},{cell},{rsrp:.6g}\n")
    events = reference_fsm(samples, m_hyst, t_ttt, t_mg, per_candidate)
    expected = OUT / f"expected_{idx:02d}.csv"
    with expected.open("w") as f:
        f.write(f"# {fmt(m_hyst)} {fmt(t_ttt)} {fmt(t_mg)} {1 if per_candidate else 0}\n")
        f.write("time_ms,event,from_cell,to_cell\n")
        for time_ms, kind, src, dst in events:
            f.write(f"{fmt(time_ms)},{kind},{cell_ids[src]},{cell_ids[dst]}\n")


def steps(t_mg, rows):
    return [(i * t_mg, list(r)) for i, r in enumerate(rows)]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.csv"):
        old.unlink()

    idx = 1

    # 1: immediate handover with zero TTT.
    write_case(idx, steps(40, [[-70, -75], [-70, -67.5], [-70, -67.5]]),
               [0, 1], 2, 0, 40, False)
    idx += 1

    # 2: margin boundary equality never triggers (strict inequality).
    write_case(idx, steps(40, [[-70, -75]] + [[-70, -68]] * 12), [0, 1], 2, 0, 40, False)
    idx += 1

    # 3: margin beaten by 0.1 dB does trigger.
    write_case(idx, steps(40, [[-70, -75]] + [[-70, -67.9]] * 3), [0, 1], 2, 0, 40, False)
    idx += 1

    # 4: TTT 160, condition on samples 3..6 -> single handover at sample 6.
    rows = [[-70, -75]] * 3 + [[-70, -67]] * 4 + [[-70, -75]] * 3
    write_case(idx, steps(40, rows), [0, 1], 2, 160, 40, False)
    idx += 1

    # 5: TTT 160, condition drops every 4th sample -> resets, no handover.
    rows = [[-70, -75]]
    for i in range(1, 21):
        rows.append([-70, -67 if i % 4 else -75])
    write_case(idx, steps(40, rows), [0, 1], 2, 160, 40, False)
    idx += 1

    # 6: TTT 40 needs one sustained sample pair.
    rows = [[-70, -75], [-70, -67], [-70, -75], [-70, -67], [-70, -67]]
    write_case(idx, steps(40, rows), [0, 1], 2, 40, 40, False)
    idx += 1

    # 7: aggregate mode, candidate switch mid-TTT keeps the timer running.
    rows = [[-70, -75, -75], [-70, -67, -75], [-70, -67, -75],
            [-70, -75, -66], [-70, -75, -66]]
    write_case(idx, steps(40, rows), [0, 1, 2], 2, 160, 40, False)
    idx += 1

    # 8: same trace, per-candidate mode restarts on the switch.
    write_case(idx, steps(40, rows), [0, 1, 2], 2, 160, 40, True)
    idx += 1

    # 9: ping-pong between two cells with zero TTT.
    rows = [[-70, -75]]
    for i in range(1, 13):
        rows.append([-70, -67] if i % 2 else [-64, -70])
    write_case(idx, steps(40, rows), [0, 1], 2, 0, 40, False)
    idx += 1

    # 10: initial association picks the strongest cell, ties to the lowest id.
    rows = [[-70, -70, -80], [-70, -70, -80], [-70, -75, -67]]
    write_case(idx, steps(40, rows), [3, 5, 9], 2, 0, 40, False)
    idx += 1

    # 11: serving cell recovers mid-TTT -> reset, later completes.
    rows = [[-60, -75], [-60, -57], [-60, -57], [-55, -57],
            [-60, -57], [-60, -57], [-60, -57], [-60, -57]]
    write_case(idx, steps(40, rows), [0, 1], 2, 120, 40, False)
    idx += 1

    # 12: three cells, the best challenger alternates every sample (aggregate).
    rows = [[-70, -75, -75]]
    for i in range(1, 9):
        rows.append([-70, -66, -75] if i % 2 else [-70, -75, -65])
    write_case(idx, steps(40, rows), [0, 1, 2], 2, 160, 40, False)
    idx += 1

    # 13: same alternating challengers, per-candidate mode -> endless restarts.
    write_case(idx, steps(40, rows), [0, 1, 2], 2, 160, 40, True)
    idx += 1

    # 14: 100 ms measurement gap with TTT 200.
    rows = [[-70, -75], [-70, -67], [-70, -67], [-70, -67], [-70, -75]]
    write_case(idx, steps(100, rows), [0, 1], 2, 200, 100, False)
    idx += 1

    # 15: zero margin, equality still fails the strict inequality.
    rows = [[-70, -75], [-70, -70], [-70, -70], [-70, -69.9]]
    write_case(idx, steps(40, rows), [0, 1], 0, 0, 40, False)
    idx += 1

    # 16: large margin of 5 dB suppresses a 4 dB challenger.
    rows = [[-70, -75]] + [[-70, -66]] * 6
    write_case(idx, steps(40, rows), [0, 1], 5, 0, 40, False)
    idx += 1

    # 17: consecutive handovers 0 -> 1 -> 2 under zero TTT.
    rows = [[-70, -75, -80], [-70, -67, -80], [-75, -67, -63], [-75, -67, -63]]
    write_case(idx, steps(40, rows), [0, 1, 2], 2, 0, 40, False)
    idx += 1

    # 18..24: randomized walks, aggregate mode, mixed TTT values.
    rng = random.Random(20260825)
    for t_ttt in (0, 40, 160, 0, 160, 40, 160):
        n_cells = rng.choice([2, 3, 4])
        levels = [-70.0 - 3.0 * j for j in range(n_cells)]
        rows = []
        for _ in range(60):
            rows.append(list(levels))
            for j in range(n_cells):
                levels[j] += rng.uniform(-2.5, 2.5)
                levels[j] = max(-95.0, min(-55.0, levels[j]))
        rows = [[round(v, 2) for v in r] for r in rows]
        write_case(idx, steps(40, rows), list(range(n_cells)), 2, t_ttt, 40, False)
        idx += 1

    # 25..27: randomized walks in per-candidate mode.
    for t_ttt in (40, 160, 160):
        n_cells = rng.choice([3, 4])
        levels = [-70.0 - 2.0 * j for j in range(n_cells)]
        rows = []
        for _ in range(60):
            rows.append(list(levels))
            for j in range(n_cells):
                levels[j] += rng.uniform(-2.5, 2.5)
                levels[j] = max(-95.0, min(-55.0, levels[j]))
        rows = [[round(v, 2) for v in r] for r in rows]
        write_case(idx, steps(40, rows), list(range(n_cells)), 2, t_ttt, 40, True)
        idx += 1

    print(f"wrote {idx - 1} traces to {OUT}")


if __name__ == "__main__":
    main()
