from tfqkd.Eve import Absent, FullInterceptResend, TimeSliceAttack
from tfqkd.Oracle import oracle_expectations
from tfqkd.Protocol import BLOCK_SIZE, SessionConfig, run_session, simulate_block
from tfqkd.PulseModel import DimensionlessParams


class TimeBlock:
    params = ["none", "full", "slice"]
    param_names = ["eve"]

    def setup(self, eve):
        strategy = {"none": Absent(), "full": FullInterceptResend(), "slice": TimeSliceAttack(0.05)}
        self.config = SessionConfig(
            DimensionlessParams(1.65, 0.05, 2.5), BLOCK_SIZE, 0, strategy[eve]
        )

    def time_simulate_block(self, eve):
        simulate_block(self.config, 0)

    def time_block_tally(self, eve):
        simulate_block(self.config, 0).tally()


class TimeSession:
    def setup(self):
        self.config = SessionConfig(
            DimensionlessParams(1.65, 0.05, 2.5), 10 * BLOCK_SIZE, 0, TimeSliceAttack(0.05)
        )

    def time_run_session(self):
        run_session(self.config, workers=1)


class TimeOracle:
    params = [2, 3, 5, 8]
    param_names = ["n_symbols"]

    def setup(self, n_symbols):
        self.config = SessionConfig(
            DimensionlessParams(1.65, 0.05, 2.5 * (n_symbols - 1), n_symbols),
            10**6,
            0,
            TimeSliceAttack(0.05),
        )

    def time_oracle_expectations(self, n_symbols):
        oracle_expectations(self.config)
