#include "cwmix/couplings.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace cwmix {

namespace {

// Classes used by the pair couplings.
constexpr int kClassDisagreeTildeMinus = 0;  // x = +1, x~ = -1
constexpr int kClassDisagreeTildePlus = 1;   // x = -1, x~ = +1
constexpr int kClassAgree = 2;
constexpr int kClassTildePlus = 0;  // x~ = +1 (spin-bucket kinds)
constexpr int kClassTildeMinus = 1;

// Refreshed value for `site`: +1 with probability p_plus(S - sigma(site)/n),
// decided with the supplied uniform.
std::int8_t heat_bath_value(const SpinConfiguration& c, const ModelParams& p, int site,
                            double u) {
    const int numer = c.magnetization_numerator() - c.spin(site);
    const double p_plus =
        update_probabilities(p.beta, numer / static_cast<double>(c.n())).p_plus;
    return u < p_plus ? std::int8_t{1} : std::int8_t{-1};
}

}  // namespace

SiteClasses::SiteClasses(int n_sites, int n_classes)
    : members_(static_cast<size_t>(n_classes)),
      class_of_(static_cast<size_t>(n_sites), -1),
      pos_(static_cast<size_t>(n_sites), -1) {}

void SiteClasses::assign(int site, int cls) {
    const int old = class_of_[static_cast<size_t>(site)];
    if (old == cls) return;
    if (old >= 0) {
        std::vector<int>& m = members_[static_cast<size_t>(old)];
        const int p = pos_[static_cast<size_t>(site)];
        m[static_cast<size_t>(p)] = m.back();
        pos_[static_cast<size_t>(m.back())] = p;
        m.pop_back();
    }
    std::vector<int>& m = members_[static_cast<size_t>(cls)];
    pos_[static_cast<size_t>(site)] = static_cast<int>(m.size());
    m.push_back(site);
    class_of_[static_cast<size_t>(site)] = cls;
}

int SiteClasses::sample(int cls, RngStream& rng) const {
    const std::vector<int>& m = members_[static_cast<size_t>(cls)];
    if (m.empty()) throw std::logic_error("SiteClasses::sample: empty class");
    return m[static_cast<size_t>(rng.uniform_below(static_cast<int>(m.size())))];
}

CoupledPair::CoupledPair(CouplingKind kind, SpinConfiguration x, SpinConfiguration x_tilde,
                         const ModelParams& p, std::optional<SpinConfiguration> sigma0)
    : kind_(kind),
      x_(std::move(x)),
      xt_(std::move(x_tilde)),
      sigma0_(sigma0 ? std::move(*sigma0) : SpinConfiguration::all_plus(p.n)),
      params_(p),
      classes_(p.n, 3) {
    params_.validate();
    if (x_.n() != params_.n || xt_.n() != params_.n || sigma0_.n() != params_.n)
        throw std::invalid_argument("CoupledPair: configuration sizes must match params");

    if (kind_ == CouplingKind::kMatchedSite || kind_ == CouplingKind::kTwoCoordinate) {
        if (x_.plus_count() != xt_.plus_count())
            throw std::logic_error("CoupledPair: coupling requires equal magnetizations");
    }
    if (kind_ == CouplingKind::kReflection) {
        if (x_.plus_count() + xt_.plus_count() != params_.n)
            throw std::logic_error("CoupledPair: reflection requires opposite magnetizations");
    }

    disagreements_ = hamming_distance(x_, xt_);
    const UvCounts uv_x = project_uv(x_, sigma0_);
    const UvCounts uv_xt = project_uv(xt_, sigma0_);
    u_ = uv_x.u;
    v_ = uv_x.v;
    ut_ = uv_xt.u;
    vt_ = uv_xt.v;
    if (kind_ == CouplingKind::kTwoCoordinate && ut_ - u_ != vt_ - v_)
        throw std::logic_error("CoupledPair: agreement-count gap must match in U and V");

    for (int i = 0; i < params_.n; ++i) move_site_class(i);
    refresh_stops();
}

void CoupledPair::move_site_class(int site) {
    int cls;
    switch (kind_) {
        case CouplingKind::kMatchedSite:
            if (x_.spin(site) == xt_.spin(site))
                cls = kClassAgree;
            else
                cls = xt_.spin(site) == 1 ? kClassDisagreeTildePlus : kClassDisagreeTildeMinus;
            break;
        case CouplingKind::kTwoCoordinate:
        case CouplingKind::kReflection:
            cls = xt_.spin(site) == 1 ? kClassTildePlus : kClassTildeMinus;
            break;
        default:
            return;  // independent / grand need no classes
    }
    classes_.assign(site, cls);
}

void CoupledPair::refresh_stops() {
    const int num_x = x_.magnetization_numerator();
    const int num_xt = xt_.magnetization_numerator();
    if (!stops_.tau_zero && std::abs(num_x) <= 1) stops_.tau_zero = time_;
    if (!stops_.tau_mag && num_x == num_xt) stops_.tau_mag = time_;
    if (!stops_.tau_abs && std::abs(num_x) <= std::abs(num_xt)) stops_.tau_abs = time_;
    if (!stops_.tau_coalesce && disagreements_ == 0) stops_.tau_coalesce = time_;
}

void CoupledPair::step(RngStream& rng) {
    switch (kind_) {
        case CouplingKind::kIndependent: step_independent(rng); break;
        case CouplingKind::kGrand: step_grand(rng); break;
        case CouplingKind::kMatchedSite: step_matched(rng); break;
        case CouplingKind::kTwoCoordinate: step_two_coordinate(rng); break;
        case CouplingKind::kReflection: step_reflection(rng); break;
    }
    ++time_;
    refresh_stops();
}

void CoupledPair::write_x(int site, std::int8_t value) {
    u_ -= (sigma0_.spin(site) == 1 && x_.spin(site) == 1);
    v_ -= (sigma0_.spin(site) == -1 && x_.spin(site) == -1);
    x_.set_spin(site, value);
    u_ += (sigma0_.spin(site) == 1 && value == 1);
    v_ += (sigma0_.spin(site) == -1 && value == -1);
}

void CoupledPair::write_xt(int site, std::int8_t value) {
    ut_ -= (sigma0_.spin(site) == 1 && xt_.spin(site) == 1);
    vt_ -= (sigma0_.spin(site) == -1 && xt_.spin(site) == -1);
    xt_.set_spin(site, value);
    ut_ += (sigma0_.spin(site) == 1 && value == 1);
    vt_ += (sigma0_.spin(site) == -1 && value == -1);
}

void CoupledPair::step_independent(RngStream& rng) {
    const int site_x = rng.uniform_below(params_.n);
    const double u_x = rng.uniform01();
    const int site_xt = rng.uniform_below(params_.n);
    const double u_xt = rng.uniform01();
    const bool was_x = x_.spin(site_x) != xt_.spin(site_x);
    const bool was_xt = x_.spin(site_xt) != xt_.spin(site_xt);
    write_x(site_x, heat_bath_value(x_, params_, site_x, u_x));
    write_xt(site_xt, heat_bath_value(xt_, params_, site_xt, u_xt));
    disagreements_ += (x_.spin(site_x) != xt_.spin(site_x)) - was_x;
    if (site_xt != site_x)
        disagreements_ += (x_.spin(site_xt) != xt_.spin(site_xt)) - was_xt;
}

void CoupledPair::step_grand(RngStream& rng) {
    const int site = rng.uniform_below(params_.n);
    const double u = rng.uniform01();
    const bool was = x_.spin(site) != xt_.spin(site);
    write_x(site, heat_bath_value(x_, params_, site, u));
    write_xt(site, heat_bath_value(xt_, params_, site, u));
    disagreements_ += (x_.spin(site) != xt_.spin(site)) - was;
}

void CoupledPair::step_matched(RngStream& rng) {
    assert(x_.plus_count() == xt_.plus_count());
    const int site = rng.uniform_below(params_.n);
    const double u = rng.uniform01();
    if (x_.spin(site) == xt_.spin(site)) {
        // Agreeing site: both chains see the same threshold, so one draw
        // keeps them identical there and disagreements are unchanged.
        const std::int8_t value = heat_bath_value(x_, params_, site, u);
        write_x(site, value);
        write_xt(site, value);
        return;
    }
    // Pair the disagreement at `site` with an opposite-type disagreement in
    // x~ (same spin there as x has here); both get the same refreshed value,
    // so the plus counts move together and disagreements change by 0 or -2.
    const int want = x_.spin(site) == 1 ? kClassDisagreeTildePlus : kClassDisagreeTildeMinus;
    const int partner = classes_.sample(want, rng);
    const int numer = x_.magnetization_numerator() - x_.spin(site);
    const double p_plus =
        update_probabilities(params_.beta, numer / static_cast<double>(params_.n)).p_plus;
    const std::int8_t value = u < p_plus ? std::int8_t{1} : std::int8_t{-1};
    const bool was_site = true, was_partner = true;
    write_x(site, value);
    write_xt(partner, value);
    disagreements_ += (x_.spin(site) != xt_.spin(site)) - was_site;
    disagreements_ += (x_.spin(partner) != xt_.spin(partner)) - was_partner;
    move_site_class(site);
    move_site_class(partner);
}

void CoupledPair::step_two_coordinate(RngStream& rng) {
    assert(x_.plus_count() == xt_.plus_count());
    const int site = rng.uniform_below(params_.n);
    const double u = rng.uniform01();
    const std::int8_t watched = x_.spin(site);
    // Partner: uniform among x~ sites currently holding the same spin value.
    const int partner =
        classes_.sample(watched == 1 ? kClassTildePlus : kClassTildeMinus, rng);
    const int numer = x_.magnetization_numerator() - watched;
    const double p_plus =
        update_probabilities(params_.beta, numer / static_cast<double>(params_.n)).p_plus;
    const std::int8_t value = u < p_plus ? std::int8_t{1} : std::int8_t{-1};

    const bool was_site = x_.spin(site) != xt_.spin(site);
    const bool was_partner = x_.spin(partner) != xt_.spin(partner);
    write_x(site, value);
    write_xt(partner, value);
    disagreements_ += (x_.spin(site) != xt_.spin(site)) - was_site;
    if (partner != site)
        disagreements_ += (x_.spin(partner) != xt_.spin(partner)) - was_partner;
    move_site_class(partner);
}

void CoupledPair::step_reflection(RngStream& rng) {
    assert(x_.plus_count() + xt_.plus_count() == params_.n);
    const int site = rng.uniform_below(params_.n);
    const double u = rng.uniform01();
    const std::int8_t watched = x_.spin(site);
    // Partner: uniform among x~ sites holding the opposite spin value; it
    // receives the negated refresh, keeping S(x~) = -S(x) exactly.
    const int partner =
        classes_.sample(watched == 1 ? kClassTildeMinus : kClassTildePlus, rng);
    const int numer = x_.magnetization_numerator() - watched;
    const double p_plus =
        update_probabilities(params_.beta, numer / static_cast<double>(params_.n)).p_plus;
    const std::int8_t value = u < p_plus ? std::int8_t{1} : std::int8_t{-1};

    const bool was_site = x_.spin(site) != xt_.spin(site);
    const bool was_partner = x_.spin(partner) != xt_.spin(partner);
    write_x(site, value);
    write_xt(partner, static_cast<std::int8_t>(-value));
    disagreements_ += (x_.spin(site) != xt_.spin(site)) - was_site;
    if (partner != site)
        disagreements_ += (x_.spin(partner) != xt_.spin(partner)) - was_partner;
    move_site_class(partner);
}

void CoupledPair::check_structure() const {
    if (hamming_distance(x_, xt_) != disagreements_)
        throw std::logic_error("CoupledPair: stale disagreement count");
    const UvCounts uv_x = project_uv(x_, sigma0_);
    const UvCounts uv_xt = project_uv(xt_, sigma0_);
    if (uv_x.u != u_ || uv_x.v != v_ || uv_xt.u != ut_ || uv_xt.v != vt_)
        throw std::logic_error("CoupledPair: stale agreement counts");
    if (kind_ == CouplingKind::kMatchedSite || kind_ == CouplingKind::kTwoCoordinate) {
        if (x_.plus_count() != xt_.plus_count())
            throw std::logic_error("CoupledPair: magnetizations diverged");
    }
    if (kind_ == CouplingKind::kTwoCoordinate) {
        if (ut_ - u_ != vt_ - v_)
            throw std::logic_error("CoupledPair: agreement gap differs between U and V");
    }
    if (kind_ == CouplingKind::kReflection) {
        if (x_.plus_count() + xt_.plus_count() != params_.n)
            throw std::logic_error("CoupledPair: reflection symmetry lost");
    }
    // Full class re-partition.
    for (int i = 0; i < params_.n; ++i) {
        int expect = -1;
        switch (kind_) {
            case CouplingKind::kMatchedSite:
                expect = x_.spin(i) == xt_.spin(i)
                             ? kClassAgree
                             : (xt_.spin(i) == 1 ? kClassDisagreeTildePlus
                                                 : kClassDisagreeTildeMinus);
                break;
            case CouplingKind::kTwoCoordinate:
            case CouplingKind::kReflection:
                expect = xt_.spin(i) == 1 ? kClassTildePlus : kClassTildeMinus;
                break;
            default:
                continue;
        }
        if (classes_.class_of(i) != expect)
            throw std::logic_error("CoupledPair: stale class for site " + std::to_string(i));
    }
}

RMoveRates two_coordinate_rates(const CoupledPair& pair) {
    if (pair.kind() != CouplingKind::kTwoCoordinate)
        throw std::invalid_argument("two_coordinate_rates: wrong coupling kind");
    const int n = pair.x().n();
    const double dn = n;
    const double beta = pair.params().beta;
    const int ubar0 = pair.sigma0().plus_count();
    const int vbar0 = n - ubar0;
    const UvCounts uv = pair.uv();
    const double u = uv.u, v = uv.v, r = pair.r_gap();
    const int numer = pair.x().magnetization_numerator();
    const double p_m = update_probabilities(beta, (numer - 1) / dn).p_minus;
    const double p_p = update_probabilities(beta, (numer + 1) / dn).p_plus;
    // Shared denominators are the plus/minus site counts of either chain.
    const double n_plus = vbar0 + u - v;
    const double n_minus = ubar0 - u + v;
    RMoveRates rates{0, 0};
    // R decreases: watch a C-site and hit an A-partner with a -1 refresh, or
    // watch a B-site and hit a D-partner with a +1 refresh.
    if (vbar0 - v > 0) rates.a += ((vbar0 - v) / dn) * ((u + r) / n_plus) * p_m;
    if (ubar0 - u > 0) rates.a += ((ubar0 - u) / dn) * ((v + r) / n_minus) * p_p;
    // R increases: the mirrored moves.
    if (u > 0) rates.b += (u / dn) * ((vbar0 - v - r) / n_plus) * p_m;
    if (v > 0) rates.b += (v / dn) * ((ubar0 - u - r) / n_minus) * p_p;
    return rates;
}

}  // namespace cwmix
