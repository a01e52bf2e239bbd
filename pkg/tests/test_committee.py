"""Committee-based broadcast: layout, majority vote, n-independent honest
traffic, passive silence, and unicast-metered core accounting."""

import pytest

from selbroadcast import (
    CommitteeLayout,
    ModelViolation,
    SystemConfig,
    check_bb_properties,
    committee_layout,
    majority_vote,
    make_strategy,
    run_algorithm2,
)


def run(n, t, c, L, strategy_name, seed=0, core_mode="broadcast", **params):
    config = SystemConfig(n=n, t=t, c=c, L=L, seed=seed)
    strategy = make_strategy(strategy_name, config, **params)
    rng_x = __import__("random").Random(seed)
    x = "".join("01"[rng_x.getrandbits(1)] for _ in range(L))
    return x, run_algorithm2(x, config, strategy, core_mode=core_mode)


def test_layout():
    config = SystemConfig(n=10, t=1, c=4, L=32)
    layout = committee_layout(config)
    assert layout == CommitteeLayout(
        active=(1, 2, 3, 4),
        announcers=(1, 2, 3),
        passive=(5, 6, 7, 8, 9, 10),
    )


def test_majority_vote_examples():
    assert majority_vote(["1", "1", "0"], 1) == "1"
    assert majority_vote(["00", "01", "00", "01", "00"], 2) == "00"


def test_majority_vote_requires_quorum():
    # three distinct values among 2t+1 = 3: nothing reaches t+1 = 2
    with pytest.raises(ModelViolation):
        majority_vote(["0", "1", "2"], 1)
    with pytest.raises(ValueError):
        majority_vote(["1", "1"], 1)


def test_honest_run_message_count():
    # SRC: 1 broadcast; CORE: 4 EIG instances x (1 + 3 relays); ANN: 3.
    x, out = run(10, 1, 4, 32, "honest")
    assert check_bb_properties(out, x, out.faulty)
    assert out.meter.honest_messages == 20
    assert out.meter.by_phase["SRC"].honest_messages == 1
    assert out.meter.by_phase["CORE"].honest_messages == 16
    assert out.meter.by_phase["ANN"].honest_messages == 3


@pytest.mark.parametrize("strategy_name", ["honest", "equivocating_source"])
def test_honest_traffic_independent_of_n(strategy_name):
    # D-sized inputs at n=10 (c=4) and n=25 (c=5): fault-free message
    # counts match because only the 3t+1 lowest ids ever transmit.
    _, small = run(10, 1, 4, 32, strategy_name, seed=7)
    _, large = run(25, 1, 5, 115, strategy_name, seed=7)
    assert small.meter.honest_messages == large.meter.honest_messages


def test_passive_nodes_never_transmit():
    for strategy_name in ("honest", "equivocating_source"):
        _, out = run(10, 1, 4, 32, strategy_name, seed=3)
        passive = set(committee_layout(out.config).passive)
        assert all(entry.sender not in passive for entry in out.trace)


def test_unicast_core_same_outputs_more_messages():
    x, broadcast_out = run(10, 1, 4, 32, "honest", core_mode="broadcast")
    x2, unicast_out = run(10, 1, 4, 32, "honest", core_mode="unicast")
    assert x == x2
    assert broadcast_out.outputs == unicast_out.outputs
    assert unicast_out.meter.honest_messages > broadcast_out.meter.honest_messages
    # a unicast-metered broadcast counts once per receiver (n - 1 = 9)
    b = broadcast_out.meter.by_phase["CORE"].honest_messages
    assert unicast_out.meter.by_phase["CORE"].honest_messages == b * 9


@pytest.mark.parametrize("strategy_name", ["equivocating_source", "detection_liar", "randomized_byzantine"])
def test_adversarial_runs_satisfy_broadcast_properties(strategy_name):
    for seed in range(10):
        x, out = run(10, 1, 4, 32, strategy_name, seed=seed)
        assert check_bb_properties(out, x, out.faulty), strategy_name


def test_messages_exceed_fault_budget():
    _, out = run(10, 1, 4, 32, "honest")
    assert out.meter.honest_messages + out.meter.adversary_messages > out.config.t


def test_input_length_validated():
    config = SystemConfig(n=10, t=1, c=4, L=32)
    with pytest.raises(ValueError):
        run_algorithm2("0" * 31, config, make_strategy("honest", config))
    with pytest.raises(ValueError):
        run_algorithm2("0" * 32, config, make_strategy("honest", config), core_mode="multicast")
