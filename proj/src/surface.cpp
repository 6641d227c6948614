#include "hadamard/surface.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <variant>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

struct PolynomialRep {
    Poly2<Rational> exact;
    Poly2<double> values;
    Poly2<double> mixed;
};

struct PowerRep {
    std::vector<PowerTerm> terms;
    std::vector<PowerTerm> mixed;
};

struct CallableRep {
    BivariateFn f;
    BivariateFn mixed;  // empty for NumericOnly
};

double checked(double value, double u, double v, const std::string& label) {
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os.precision(17);
        os << "surface '" << label << "' is not finite at (" << u << ", " << v << ")";
        throw EvalError(os.str());
    }
    return value;
}

double eval_terms(const std::vector<PowerTerm>& terms, double u, double v) {
    double acc = 0.0;
    for (const auto& t : terms) acc += t.coeff * std::pow(u, t.alpha) * std::pow(v, t.beta);
    return acc;
}

// integral over [lo, hi] of x^e.
double power_integral(double e, double lo, double hi) { return (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0); }

std::vector<PowerTerm> differentiate(const std::vector<PowerTerm>& terms) {
    std::vector<PowerTerm> out;
    for (const auto& t : terms) {
        if (t.alpha == 0.0 || t.beta == 0.0) continue;
        out.push_back({t.coeff * t.alpha * t.beta, t.alpha - 1.0, t.beta - 1.0});
    }
    return out;
}

}  // namespace

struct Surface::Impl {
    SurfaceKind kind;
    std::string label;
    std::variant<PolynomialRep, PowerRep, CallableRep> rep;
};

std::string_view to_string(SurfaceKind kind) noexcept {
    switch (kind) {
        case SurfaceKind::Polynomial: return "polynomial";
        case SurfaceKind::PowerProduct: return "power_product";
        case SurfaceKind::Expression: return "expression";
        case SurfaceKind::NumericOnly: return "numeric_only";
    }
    return "?";
}

Surface Surface::polynomial(Poly2<Rational> coeffs, std::string label) {
    coeffs = coeffs.trimmed();
    PolynomialRep rep;
    rep.values = coeffs.map<double>([](const Rational& r) { return to_double(r); });
    rep.mixed = coeffs.mixed_partial().map<double>([](const Rational& r) { return to_double(r); });
    rep.exact = std::move(coeffs);
    return Surface(std::make_shared<const Impl>(Impl{SurfaceKind::Polynomial, std::move(label), std::move(rep)}));
}

Surface Surface::power_sum(std::vector<PowerTerm> terms, std::string label) {
    for (const auto& t : terms) {
        if (!(t.alpha >= 0.0) || !(t.beta >= 0.0) || !std::isfinite(t.coeff)) {
            throw std::invalid_argument("power-product terms need finite coefficients and exponents >= 0");
        }
    }
    PowerRep rep;
    rep.mixed = differentiate(terms);
    rep.terms = std::move(terms);
    return Surface(std::make_shared<const Impl>(Impl{SurfaceKind::PowerProduct, std::move(label), std::move(rep)}));
}

Surface Surface::expression(BivariateFn f, BivariateFn mixed, std::string label) {
    if (!f || !mixed) throw std::invalid_argument("expression surface needs both f and its mixed partial");
    return Surface(std::make_shared<const Impl>(
        Impl{SurfaceKind::Expression, std::move(label), CallableRep{std::move(f), std::move(mixed)}}));
}

Surface Surface::numeric(BivariateFn f, std::string label) {
    if (!f) throw std::invalid_argument("numeric surface needs a callable");
    return Surface(
        std::make_shared<const Impl>(Impl{SurfaceKind::NumericOnly, std::move(label), CallableRep{std::move(f), {}}}));
}

SurfaceKind Surface::kind() const noexcept { return impl_->kind; }
const std::string& Surface::label() const noexcept { return impl_->label; }

double Surface::eval(double u, double v) const {
    const double value = std::visit(
        [&](const auto& rep) -> double {
            using R = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<R, PolynomialRep>) {
                return rep.values.eval(u, v);
            } else if constexpr (std::is_same_v<R, PowerRep>) {
                return eval_terms(rep.terms, u, v);
            } else {
                return rep.f(u, v);
            }
        },
        impl_->rep);
    return checked(value, u, v, impl_->label);
}

double Surface::mixed_partial(double u, double v) const {
    const double value = std::visit(
        [&](const auto& rep) -> double {
            using R = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<R, PolynomialRep>) {
                return rep.mixed.eval(u, v);
            } else if constexpr (std::is_same_v<R, PowerRep>) {
                return eval_terms(rep.mixed, u, v);
            } else {
                if (rep.mixed) return rep.mixed(u, v);
                return central_mixed_difference(rep.f, u, v, finite_difference_step(u), finite_difference_step(v));
            }
        },
        impl_->rep);
    return checked(value, u, v, impl_->label + " (mixed partial)");
}

const Poly2<Rational>* Surface::exact_polynomial() const noexcept {
    if (const auto* rep = std::get_if<PolynomialRep>(&impl_->rep)) return &rep->exact;
    return nullptr;
}

std::vector<PowerTerm> Surface::power_terms() const {
    if (const auto* rep = std::get_if<PowerRep>(&impl_->rep)) return rep->terms;
    std::vector<PowerTerm> out;
    if (const auto* rep = std::get_if<PolynomialRep>(&impl_->rep)) {
        for (int i = 0; i <= rep->values.degree_u(); ++i)
            for (int j = 0; j <= rep->values.degree_v(); ++j)
                if (rep->values.at(i, j) != 0.0) out.push_back({rep->values.at(i, j), double(i), double(j)});
    }
    return out;
}

bool Surface::has_closed_form_integrals() const noexcept {
    return impl_->kind == SurfaceKind::Polynomial || impl_->kind == SurfaceKind::PowerProduct;
}

std::optional<double> Surface::integral_box(double ulo, double uhi, double vlo, double vhi) const {
    if (const auto* rep = std::get_if<PolynomialRep>(&impl_->rep)) {
        return rep->values.integrate_box(ulo, uhi, vlo, vhi);
    }
    if (const auto* rep = std::get_if<PowerRep>(&impl_->rep)) {
        double acc = 0.0;
        for (const auto& t : rep->terms)
            acc += t.coeff * power_integral(t.alpha, ulo, uhi) * power_integral(t.beta, vlo, vhi);
        return checked(acc, ulo, vlo, impl_->label + " (box integral)");
    }
    return std::nullopt;
}

std::optional<double> Surface::integral_v_at(double u, double vlo, double vhi) const {
    if (const auto* rep = std::get_if<PolynomialRep>(&impl_->rep)) return rep->values.integrate_v_at(u, vlo, vhi);
    if (const auto* rep = std::get_if<PowerRep>(&impl_->rep)) {
        double acc = 0.0;
        for (const auto& t : rep->terms) acc += t.coeff * std::pow(u, t.alpha) * power_integral(t.beta, vlo, vhi);
        return checked(acc, u, vlo, impl_->label + " (edge integral)");
    }
    return std::nullopt;
}

std::optional<double> Surface::integral_u_at(double v, double ulo, double uhi) const {
    if (const auto* rep = std::get_if<PolynomialRep>(&impl_->rep)) return rep->values.integrate_u_at(v, ulo, uhi);
    if (const auto* rep = std::get_if<PowerRep>(&impl_->rep)) {
        double acc = 0.0;
        for (const auto& t : rep->terms) acc += t.coeff * power_integral(t.alpha, ulo, uhi) * std::pow(v, t.beta);
        return checked(acc, ulo, v, impl_->label + " (edge integral)");
    }
    return std::nullopt;
}

Surface Surface::scaled(double alpha) const {
    const std::string label = impl_->label.empty() ? std::string{} : "scaled(" + impl_->label + ")";
    if (const auto* rep = std::get_if<PolynomialRep>(&impl_->rep)) {
        return polynomial(rep->exact * exact_rational(alpha), label);
    }
    if (const auto* rep = std::get_if<PowerRep>(&impl_->rep)) {
        auto terms = rep->terms;
        for (auto& t : terms) t.coeff *= alpha;
        return power_sum(std::move(terms), label);
    }
    const auto& rep = std::get<CallableRep>(impl_->rep);
    BivariateFn f = [g = rep.f, alpha](double u, double v) { return alpha * g(u, v); };
    if (rep.mixed) {
        BivariateFn d = [g = rep.mixed, alpha](double u, double v) { return alpha * g(u, v); };
        return expression(std::move(f), std::move(d), label);
    }
    return numeric(std::move(f), label);
}

Surface Surface::mixed_partial_surface() const {
    const std::string label = "d2(" + impl_->label + ")";
    if (const auto* rep = std::get_if<PolynomialRep>(&impl_->rep)) return polynomial(rep->exact.mixed_partial(), label);
    if (const auto* rep = std::get_if<PowerRep>(&impl_->rep)) return power_sum(rep->mixed, label);
    Surface self = *this;
    return numeric([self](double u, double v) { return self.mixed_partial(u, v); }, label);
}

BivariateFn Surface::as_function() const {
    Surface self = *this;
    return [self](double u, double v) { return self.eval(u, v); };
}

double eval(const Surface& f, double u, double v) { return f.eval(u, v); }
double mixed_partial(const Surface& f, double u, double v) { return f.mixed_partial(u, v); }

double central_mixed_difference(const BivariateFn& f, double u, double v, double hu, double hv) {
    return (f(u + hu, v + hv) - f(u + hu, v - hv) - f(u - hu, v + hv) + f(u - hu, v - hv)) / (4.0 * hu * hv);
}

double finite_difference_step(double coordinate) noexcept { return std::max(1e-4, 1e-4 * std::abs(coordinate)); }

}  // namespace hadamard
