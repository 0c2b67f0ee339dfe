"""Smoke test for the qcollide extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`.
"""

import math

import qcollide as q

H = 1 / math.sqrt(2)


def close(a, b, tol=1e-10):
    return abs(a - b) < tol


def main():
    u = q.collision_unitary(2, (0, 1), 0.3)
    assert close(u[1][1].real, math.sqrt(0.7)) and close(u[2][1].real, -math.sqrt(0.3))

    traj = q.run_trajectory(0.5, 1, [(0, 1)] * 100)
    cycle = [1.0, H, 0.0, H]
    assert all(close(c, cycle[n % 4], 1e-8) for n, c in enumerate(traj.coherence_a))
    assert q.detect_period(traj.coherence_a) == (4, 3)
    events, total = q.backflow_events(traj.trace_distance)
    print(f"p=0.5 single ancilla: {len(events)} backflow events, total {total:.3f}")

    peak = max(traj.negativity)
    assert 0.115 < peak < 0.145
    print(f"negativity peak {peak:.4f}")

    chaotic = q.run_trajectory(0.8, 1, [(0, 1)] * 200).coherence_a[-60:]
    assert q.detect_period(chaotic, max_period=20)[0] is None

    schedule = q.random_schedule(4, 100, seed=7)
    multi = q.run_trajectory(0.5, 3, schedule)
    assert multi.schedule == schedule
    rho_a = q.partial_trace(multi.final_state(0), [2, 2, 2, 2], [0])
    assert close(rho_a[0][0].real + rho_a[1][1].real, 1.0)

    markov = q.markovian_trajectory(0.5, 60)
    d = markov.trace_distance
    assert all(b <= a for a, b in zip(d, d[1:]))
    assert all(close(x, 0.5 ** (n / 2), 1e-12) for n, x in enumerate(d))

    orbit = q.orbit_sweep([0.5, 0.8])
    print("clusters at p=0.5, 0.8:", [q.distinct_values(v) for v in orbit])

    try:
        q.collision_unitary(5, (0, 1), 0.5)
    except ValueError as e:
        print(f"rejected bad register size: {e}")
    else:
        raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
