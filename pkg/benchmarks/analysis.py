from datalad_pirc.dependency_tuples import (
    canonical_parallel_problem,
    problem_complexity,
)
from datalad_pirc.interpretation import search_interpretation
from datalad_pirc.rewriting import PARALLEL_INNERMOST, empirical_complexity
from datalad_pirc.tpdb import load


class AnalysisBenchmarks:
    timeout = 600
    params = ["size", "doubles", "mod"]
    param_names = ["fixture"]

    def setup(self, name):
        self.trs = load(f"fixture:{name}")
        self.problem = canonical_parallel_problem(self.trs)

    def time_pdts(self, _name):
        canonical_parallel_problem(self.trs)

    def time_empirical(self, _name):
        empirical_complexity(self.trs, PARALLEL_INNERMOST, 6)

    def time_chain_complexity(self, _name):
        problem_complexity(self.problem, 5)


class SearchBenchmarks:
    timeout = 600

    def setup(self):
        self.problem = canonical_parallel_problem(load("fixture:doubles"))

    def time_search_doubles(self):
        search_interpretation(self.problem)
