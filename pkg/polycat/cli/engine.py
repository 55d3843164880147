import logging
from typing import List, Optional, Sequence

from polycat.bilimits import limits
from polycat.comonad import category as categories
from polycat.comonad import comonoid as comonoids
from polycat.finset import finite_sets
from polycat.monoidal import composition
from polycat.monoidal.composition import BudgetExceeded
from polycat.nerve import construction
from polycat.poly import polynomial
from polycat.simplex import delta

from polycat.cli.codec import (encode_category, encode_comonoid,
                               encode_polymap, encode_polynomial, encode_set,
                               encode_setmap)

NERVE_CHECKS = ("segal", "cosimplicial", "oracle", "simplicial")


class PolyEngine:
    def __init__(
        self,
        budget: Optional[int] = composition.DEFAULT_BUDGET,
        max_bound: int = delta.MAX_BOUND,
        debug: bool = False,
    ):
        """Runs the library operations behind each subcommand and shapes their results as JSON-ready dicts

        Args:
            budget (int, optional): Largest intermediate set any operation may build. Defaults to 10^5.
            max_bound (int, optional): Largest dimension the simplex verifiers accept. Defaults to 5.
            debug (bool, optional): Whether to enable debug logging. Defaults to False.
        """
        self.budget = budget
        self.max_bound = max_bound
        self.logger = logging.getLogger(__name__)  # Retrieve the logger object

        # Set log level based on debug flag
        log_level = logging.DEBUG if debug else logging.INFO
        self.logger.setLevel(log_level)

    def _guard(self, size: int, what: str):
        if self.budget is not None and size > self.budget:
            self.logger.warning("Refusing %s of size %d (budget %d)", what, size, self.budget)
            raise BudgetExceeded(f"{what} would have {size} elements, over the budget of {self.budget}", location=what)

    def evaluate(self, p: polynomial.Polynomial, x: finite_sets.FinSet) -> dict:
        self._guard(sum(len(x) ** len(fiber) for fiber in p.fibers), "evaluation")
        result = polynomial.evaluate(p, x)
        self.logger.debug("p(X) has %d elements", len(result))
        return {"size": len(result), "elements": encode_set(result)}

    def hom(self, p: polynomial.Polynomial, q: polynomial.Polynomial, list_maps: bool = False) -> dict:
        count = polynomial.hom_count(p, q)
        result = {"count": count}
        if list_maps:
            self._guard(count, "hom set")
            result["maps"] = [phi.label for phi in polynomial.iter_hom(p, q)]
        return result

    def compose(self, p1: polynomial.Polynomial, p2: polynomial.Polynomial) -> dict:
        p = composition.compose(p1, p2, self.budget)
        return {"polynomial": encode_polynomial(p), "positions": len(p.positions)}

    def iterate(self, p: polynomial.Polynomial, n: int) -> dict:
        levels = []
        for level in composition.iter_levels(p, n, self.budget):
            levels.append(
                {"k": level.k, "positions": len(level.positions), "directions": len(level.total_space)}
            )
        return {"levels": levels}

    def coclosure(self, p: polynomial.Polynomial, p1: polynomial.Polynomial) -> dict:
        self._guard(sum(len(p.positions) ** len(fiber) for fiber in p1.fibers), "coclosure")
        result = composition.coclosure(p, p1)
        self._guard(composition.composite_size(result, p), "adjunction unit")
        return {"polynomial": encode_polynomial(result), "unit": encode_polymap(composition.adjunction_unit(p, p1))}

    def product(self, p1: polynomial.Polynomial, p2: polynomial.Polynomial) -> dict:
        result, pi0, pi1 = limits.product(p1, p2)
        return {
            "polynomial": encode_polynomial(result),
            "projections": {"0": encode_polymap(pi0), "1": encode_polymap(pi1)},
        }

    def coproduct(self, ps: Sequence[polynomial.Polynomial]) -> dict:
        cone = limits.coproduct(ps)
        return {
            "polynomial": encode_polynomial(cone.polynomial),
            "injections": {k: encode_polymap(leg) for k, leg in cone.legs.items()},
        }

    def coequalizer(self, f, g) -> dict:
        if isinstance(f, finite_sets.SetMap):
            quotient, structure = finite_sets.coequalizer_sets(f, g)
            return {"set": encode_set(quotient), "quotient": encode_setmap(structure)}
        result, structure = limits.coequalizer(f, g)
        return {"polynomial": encode_polynomial(result), "quotient": encode_polymap(structure)}

    def limit(self, d) -> dict:
        if isinstance(d, finite_sets.FinDiagram):
            cone = finite_sets.limit(d)
            return {"set": encode_set(cone.apex), "legs": {o: encode_setmap(m) for o, m in cone.legs.items()}}
        cone = limits.general_limit(d)
        return {
            "polynomial": encode_polynomial(cone.polynomial),
            "legs": {o: encode_polymap(m) for o, m in cone.legs.items()},
        }

    def colimit(self, d) -> dict:
        if isinstance(d, finite_sets.FinDiagram):
            cone = finite_sets.colimit(d)
            return {"set": encode_set(cone.apex), "legs": {o: encode_setmap(m) for o, m in cone.legs.items()}}
        cone = limits.general_colimit(d)
        return {
            "polynomial": encode_polynomial(cone.polynomial),
            "legs": {o: encode_polymap(m) for o, m in cone.legs.items()},
        }

    def comonad_check(self, c: comonoids.Comonoid) -> dict:
        report = comonoids.check_laws(c)
        self.logger.debug("Comonoid laws: %s", report)
        return report.to_dict()

    def comonad_to_category(self, c: comonoids.Comonoid) -> dict:
        return encode_category(comonoids.to_category(c))

    def category_to_comonad(self, c: categories.Category) -> dict:
        return encode_comonoid(comonoids.from_category(c))

    def category_check(self, c: categories.Category) -> dict:
        report = categories.check_category(c)
        return {
            "unit_left": report.unit_left,
            "unit_right": report.unit_right,
            "assoc": report.assoc,
            "location": report.location,
            "roundtrip": report.passed and comonoids.roundtrip_check(c),
        }

    def retrofunctor_check(self, src: comonoids.Comonoid, dst: comonoids.Comonoid, phi: polynomial.PolyMap) -> dict:
        r = comonoids.Retrofunctor(src, dst, phi)
        return {"retrofunctor": comonoids.retrofunctor_check(r)}

    def simplex_e(self, n: int, m: int, values: Sequence[int]) -> dict:
        f = delta.DeltaOpMap(n, m, tuple(values))
        image = delta.e_on_map(f)
        return {
            "src": image.m,
            "dst": image.n,
            "values": image.to_list(),
            "word": delta.word_label(delta.normal_form(image)),
        }

    def simplex_e_plus(self, m: int, n: int, values: Sequence[int]) -> dict:
        g = delta.MonotoneMap(m, n, tuple(values))
        image = delta.e_plus(g)
        return {"src": image.m, "dst": image.n, "values": image.to_list()}

    def simplex_verify(self, bound: int) -> dict:
        reports = delta.verify_all(bound, self.max_bound)
        return {
            "bound": bound,
            "passed": all(r.passed for r in reports),
            "checks": {r.name: r.to_dict() for r in reports},
        }

    def nerve_build(self, c: comonoids.Comonoid, depth: int, checks: Sequence[str] = ("segal",)) -> dict:
        unknown = sorted(set(checks) - set(NERVE_CHECKS))
        if unknown:
            raise finite_sets.ValidationError(
                f"Unknown nerve checks {unknown}", code="bad-check", location=unknown[0]
            )
        builder = construction.NerveBuilder(c, debug=self.logger.level == logging.DEBUG)
        levels = [{"m": m, "size": len(builder.level(m))} for m in range(-1, depth + 1)]
        self.logger.debug("Nerve levels: %s", levels)
        results = {}
        if "segal" in checks:
            results["segal"] = all(construction.segal_check(c, n, builder).passed for n in range(1, depth + 1))
        if "cosimplicial" in checks:
            assembled = construction.cosimplicial_assembly(c, depth, builder)
            results["cosimplicial"] = construction.check_cosimplicial_identities(assembled).to_dict()
        if "oracle" in checks:
            report = construction.oracle_check(c, depth, builder)
            results["oracle"] = {"passed": report.passed, "failure": report.failure}
        if "simplicial" in checks:
            simplicial = construction.aug_simplicial_poly(c, depth, self.budget)
            results["simplicial"] = construction.check_simplicial_identities(simplicial).to_dict()
        return {"levels": levels, "checks": results}

    def nerve_oracle(self, c: categories.Category, n: int) -> dict:
        oracle = construction.nerve_oracle(c, n)
        return {
            "n": n,
            "count": len(oracle.chains),
            "chains": [list(chain) for chain in oracle.chains],
        }


def parse_checks(value: Optional[str]) -> List[str]:
    if not value:
        return ["segal"]
    return [c.strip() for c in value.split(",") if c.strip()]
