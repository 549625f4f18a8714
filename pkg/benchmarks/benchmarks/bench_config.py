from tfqkd.ConfigFile import parse_physical_config
from tfqkd.Prim import many, run_parser, skip_while, take_while1
from tfqkd.PulseModel import PhysicalConfig

VALUES = {
    "t0": 0.0,
    "dt_sep": 4.67e-9,
    "sigma_t": 1e-9,
    "sigma_T": 2.5e-9,
    "nu0": 1.93e14,
    "dnu_sep": 1e9,
    "sigma_nu": 1e9,
    "sigma_omega": 2e9,
    "n_symbols": 2,
}


class TimeConfigFile:
    def setup(self):
        body = "".join(f"{k} = {v!r}  # {k}\n" for k, v in VALUES.items())
        self.plain = body
        self.commented = "# pulse set\n" * 500 + body
        assert set(VALUES) == set(PhysicalConfig.keys())

    def time_parse_plain(self):
        parse_physical_config(self.plain)

    def time_parse_commented(self):
        parse_physical_config(self.commented)


class TimeMany:
    def setup(self):
        self.parser = many(take_while1(str.isalpha, "letter") < skip_while(str.isspace))
        self.text = "abc " * 10000

    def time_many_words(self):
        run_parser(self.parser, self.text)
