import math

from tfqkd.Analytic import eve_analytics
from tfqkd.SpecFun import Interval, erf, erfc, gaussian_density, gaussian_interval_prob, quadrature


class TimeErf:
    def setup(self):
        self.points = [i / 100.0 - 6.0 for i in range(1200)]

    def time_erf(self):
        for v in self.points:
            erf(v)

    def time_erfc(self):
        for v in self.points:
            erfc(v)


class TimeIntervalProb:
    def setup(self):
        self.windows = [Interval(-1.0 + i / 50.0, 1.0 + i / 50.0) for i in range(500)]
        self.tail = [Interval.above(4.0 + i / 50.0) for i in range(500)]

    def time_central_windows(self):
        for w in self.windows:
            gaussian_interval_prob(0.0, 1.0, w)

    def time_tail_windows(self):
        for w in self.tail:
            gaussian_interval_prob(0.0, 1.0, w)

    def time_quadrature(self):
        quadrature(gaussian_density, Interval(-math.sqrt(2.0) * 0.05, math.sqrt(2.0) * 0.05))

    def time_quadrature_half_line(self):
        quadrature(gaussian_density, Interval.above(0.5))


class TimeAnalytics:
    def setup(self):
        self.grid = [2.0 + i / 100.0 for i in range(101)]

    def time_z_sweep(self):
        for z in self.grid:
            eve_analytics(1.65, 0.05, z)
