"""Tests for the 1D-mesh functional simulator."""

import numpy as np
import pytest

from psram.core.errors import ProgramError, ProtocolError
from psram.mesh import (
    BoundaryPolicy,
    Direction,
    LoadConst,
    LoadInput,
    LocalMAC,
    MacOp,
    MeshConfig,
    Program,
    QuantizationMode,
    Recv,
    Send,
    SimStats,
    StoreOutput,
    block_distribution,
    execute,
    profile_to_workload,
    quantize,
)


def _mac_program(op: MacOp) -> Program:
    return Program(
        n_points=1,
        registers=3,
        const_slots=1,
        steps=[
            [LoadInput(stream=0, reg=0), LoadInput(stream=1, reg=1)],
            [LocalMAC(op=op, a=0, b=0, c=1, z=2)],
            [StoreOutput(reg=2, stream=0)],
        ],
    )


def _shift_program(n: int, direction: Direction, boundary: BoundaryPolicy) -> Program:
    return Program(
        n_points=n,
        registers=1,
        const_slots=1,
        boundary=boundary,
        steps=[
            [LoadInput(stream=0, reg=0)],
            [Send(dir=direction, reg=0), Recv(dir=direction.opposite, reg=0)],
            [StoreOutput(reg=0, stream=0)],
        ],
    )


class TestBlockDistribution:
    def test_even_split(self):
        blocks = block_distribution(8, 4)
        assert [list(b) for b in blocks] == [[0, 1], [2, 3], [4, 5], [6, 7]]

    def test_uneven_split(self):
        assert [len(b) for b in block_distribution(10, 3)] == [4, 3, 3]

    def test_singletons(self):
        assert [list(b) for b in block_distribution(3, 3)] == [[0], [1], [2]]

    def test_more_cells_than_points(self):
        blocks = block_distribution(2, 5)
        assert [len(b) for b in blocks] == [1, 1, 0, 0, 0]

    @pytest.mark.parametrize("n,p", [(0, 1), (4, 0)])
    def test_rejects_empty(self, n, p):
        with pytest.raises(ValueError):
            block_distribution(n, p)


class TestExecute:
    def test_mac_add(self):
        outputs, stats = execute(
            _mac_program(MacOp.ADD), MeshConfig(p=1), [[4.0], [5.0]], preload={0: 3.0}
        )
        assert outputs[0][0, 0] == 17.0
        assert stats.macs_executed == 1
        assert stats.mac_cycles == 1

    def test_mac_sub(self):
        outputs, _ = execute(
            _mac_program(MacOp.SUB), MeshConfig(p=1), [[4.0], [5.0]], preload={0: 3.0}
        )
        assert outputs[0][0, 0] == -7.0

    def test_shift_left_zero_gradient(self):
        program = _shift_program(4, Direction.LEFT, BoundaryPolicy.zero_gradient())
        outputs, _ = execute(program, MeshConfig(p=2), [[1.0, 2.0, 3.0, 4.0]])
        np.testing.assert_array_equal(outputs[0][0], [2.0, 3.0, 4.0, 4.0])

    def test_shift_right_fixed_boundary(self):
        program = _shift_program(3, Direction.RIGHT, BoundaryPolicy.fixed(-1.0))
        outputs, _ = execute(program, MeshConfig(p=3), [[1.0, 2.0, 3.0]])
        np.testing.assert_array_equal(outputs[0][0], [-1.0, 1.0, 2.0])

    @pytest.mark.parametrize("n", [2, 17, 256, 1024])
    def test_shift_right_matches_array_shift(self, n):
        rng = np.random.default_rng(n)
        x = rng.standard_normal(n)
        program = _shift_program(n, Direction.RIGHT, BoundaryPolicy.zero())
        outputs, _ = execute(program, MeshConfig(p=7), [x])
        expected = np.concatenate([[0.0], x[:-1]])
        np.testing.assert_array_equal(outputs[0][0], expected)

    def test_lone_cell_sees_boundary(self):
        program = _shift_program(1, Direction.LEFT, BoundaryPolicy.zero_gradient())
        outputs, _ = execute(program, MeshConfig(p=1), [[5.0]])
        assert outputs[0][0, 0] == 5.0

    def test_recv_without_send(self):
        program = Program(
            n_points=4,
            registers=1,
            const_slots=1,
            steps=[[LoadInput(stream=0, reg=0)], [Recv(dir=Direction.LEFT, reg=0)]],
        )
        with pytest.raises(ProtocolError) as exc:
            execute(program, MeshConfig(p=2), [np.zeros(4)])
        assert exc.value.step == 1
        assert exc.value.cell == 1

    def test_register_out_of_range(self):
        program = Program(
            n_points=2, registers=1, const_slots=1, steps=[[LoadInput(stream=0, reg=3)]]
        )
        with pytest.raises(ProgramError, match="register 3"):
            execute(program, MeshConfig(p=1), [np.zeros(2)])

    def test_duplicate_send_direction(self):
        program = Program(
            n_points=2,
            registers=2,
            const_slots=1,
            steps=[[Send(dir=Direction.LEFT, reg=0), Send(dir=Direction.LEFT, reg=1)]],
        )
        with pytest.raises(ProgramError):
            execute(program, MeshConfig(p=1), [])


class TestCycleAccounting:
    def _two_mac_program(self, n: int, fuse: bool = True) -> Program:
        return Program(
            n_points=n,
            registers=2,
            const_slots=1,
            fuse_exchange=fuse,
            steps=[
                [LoadInput(stream=0, reg=0)],
                [
                    LocalMAC(op=MacOp.ADD, a=0, b=0, c=0, z=1),
                    LocalMAC(op=MacOp.ADD, a=0, b=1, c=0, z=1),
                ],
                [Send(dir=Direction.LEFT, reg=1), Recv(dir=Direction.RIGHT, reg=0)],
                [StoreOutput(reg=0, stream=0)],
            ],
        )

    @pytest.mark.parametrize("n,p,span", [(8, 4, 2), (10, 3, 4), (3, 5, 1), (100, 32, 4)])
    def test_cycle_law(self, n, p, span):
        program = self._two_mac_program(n)
        _, stats = execute(program, MeshConfig(p=p), [np.ones(n)], preload={0: 1.0})
        assert stats.mac_cycles == 2 * span
        assert stats.io_cycles == 2 * span
        assert stats.per_cell_cycles[0] == 4 * span

    def test_fused_and_unfused_totals(self):
        n = 8
        fused = execute(self._two_mac_program(n), MeshConfig(p=4), [np.ones(n)])[1]
        unfused = execute(self._two_mac_program(n, False), MeshConfig(p=4), [np.ones(n)])[1]
        assert fused.comm_cycles == unfused.comm_cycles == 1
        assert fused.fused_exchanges == 1
        assert fused.total_cycles == fused.total_cycles_fused == unfused.total_cycles - 1
        assert unfused.total_cycles == unfused.total_cycles_unfused

    def test_traffic_counts(self):
        n = 6
        program = Program(
            n_points=n,
            registers=1,
            const_slots=2,
            steps=[
                [LoadConst(stream=0, slot=0, broadcast=True), LoadConst(stream=1, slot=1)],
                [LoadInput(stream=0, reg=0), StoreOutput(reg=0, stream=0)],
            ],
        )
        consts = [2.0, np.ones((1, n))]
        _, stats = execute(program, MeshConfig(p=2, w=8), [np.ones(n)], consts=consts)
        assert stats.io_values == 1 + 3 * n
        assert stats.io_bits == 8 * stats.io_values

    def test_switching_events(self):
        _, stats = execute(self._two_mac_program(5), MeshConfig(p=2, w=8), [np.ones(5)])
        assert stats.switching_events == stats.macs_executed * 8 == 80


def test_results_do_not_depend_on_p():
    rng = np.random.default_rng(3)
    n = 37
    x = rng.standard_normal(n)
    program = TestCycleAccounting()._two_mac_program(n)
    results = [
        execute(program, MeshConfig(p=p), [x], preload={0: 0.75})[0][0] for p in (1, 2, 5, 37, 64)
    ]
    for other in results[1:]:
        np.testing.assert_array_equal(results[0], other)


def test_execution_is_deterministic():
    x = np.linspace(-1.0, 1.0, 16)
    program = TestCycleAccounting()._two_mac_program(16)
    first_out, first_stats = execute(program, MeshConfig(p=4), [x], preload={0: 0.5})
    second_out, second_stats = execute(program, MeshConfig(p=4), [x], preload={0: 0.5})
    np.testing.assert_array_equal(first_out[0], second_out[0])
    assert first_stats == second_stats


def test_program_json_round_trip():
    program = TestCycleAccounting()._two_mac_program(4)
    restored = Program.model_validate_json(program.model_dump_json())
    assert restored == program
    assert restored.steps[2][0].kind == "Send"


class TestQuantize:
    def test_real_mode_is_identity(self):
        assert quantize(0.123456, MeshConfig(p=1)) == 0.123456

    def test_nearest_grid_point(self):
        mesh = MeshConfig(p=1, w=8, quantization=QuantizationMode.FIXED, frac_bits=4)
        assert quantize(0.3, mesh) == 0.3125

    def test_saturation(self):
        mesh = MeshConfig(p=1, w=8, quantization=QuantizationMode.FIXED, frac_bits=4)
        assert quantize(100.0, mesh) == 7.9375
        assert quantize(-100.0, mesh) == -8.0

    def test_error_bound(self):
        mesh = MeshConfig(p=1, w=8, quantization=QuantizationMode.FIXED, frac_bits=4)
        x = np.linspace(-7.9, 7.9, 1001)
        assert np.max(np.abs(quantize(x, mesh) - x)) <= 2.0**-5

    def test_frac_bits_must_fit(self):
        with pytest.raises(ValueError):
            MeshConfig(p=1, w=4, quantization=QuantizationMode.FIXED, frac_bits=4)


def test_profile_to_workload():
    wl = profile_to_workload(SimStats(macs_executed=5, io_bits=72))
    assert (wl.n_total, wl.s) == (10, 72)
    empty = profile_to_workload(SimStats())
    assert (empty.n_total, empty.s) == (0, 0)
