#pragma once

// Laws of the semi-major axis R on [1, inf).
//
// Every law is stored as a finite mixture of truncated power-law segments
// (density proportional to r^(-beta-1) on [lo, hi)) and atoms. That one
// representation is closed under everything the samplers need: restriction to
// a range of R, conditioning on R >= t, and size-biasing by r^m.

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ellperc/rng.hpp"

namespace ellperc {

struct PowerSegment {
    double lo = 1.0;
    double hi = std::numeric_limits<double>::infinity();
    double beta = 1.0;    // density ~ r^(-beta-1)
    double weight = 1.0;  // probability mass of the segment

    friend bool operator==(const PowerSegment&, const PowerSegment&) = default;
};

struct Atom {
    double r = 1.0;
    double weight = 1.0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// One (threshold, alpha) piece of a piecewise law: on [threshold, next
/// threshold) the survival function decays like r^(-alpha).
struct LawPiece {
    double threshold = 1.0;
    double alpha = 1.0;

    friend bool operator==(const LawPiece&, const LawPiece&) = default;
};

class AxisLaw {
  public:
    enum class Kind { pareto, point_mass, piecewise, derived };

    /// S(r) = r^(-alpha) on [1, inf).
    static AxisLaw pareto(double alpha);
    /// R = r almost surely; r >= 1.
    static AxisLaw point_mass(double r);
    /// Continuous survival with S(1) = 1 and local exponent alpha_i on
    /// [t_i, t_{i+1}); the first threshold must be 1.
    static AxisLaw piecewise(std::vector<LawPiece> pieces);

    Kind kind() const { return kind_; }
    /// Exponent of the tail (infinity for bounded support).
    double tail_exponent() const;
    /// Parameter of a pareto law, or the location of a point mass.
    double parameter() const { return parameter_; }
    const std::vector<LawPiece>& pieces() const { return pieces_; }
    const std::vector<PowerSegment>& segments() const { return segments_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    /// P[R >= r].
    double survival(double r) const;
    /// Inverse of the survival function at u in (0, 1]; DomainError at u = 0.
    double inverse_survival(double u) const;
    double sample(Rng& rng) const { return inverse_survival(rng.uniform_pos()); }

    /// P[lo <= R < hi].
    double mass(double lo, double hi) const;
    /// Law of R conditioned on lo <= R < hi. DomainError on a null range.
    AxisLaw restricted(double lo, double hi) const;
    AxisLaw at_least(double t) const { return restricted(t, std::numeric_limits<double>::infinity()); }
    /// Law with density proportional to r^m times this one. DomainError if
    /// E[R^m] is infinite.
    AxisLaw size_biased(double m) const;

    /// E[R^m], +infinity when divergent.
    double moment(double m) const;
    /// E[f(R)] by adaptive quadrature on each segment plus the atoms.
    double expectation(const std::function<double(double)>& f) const;

    /// "pareto:2", "pointmass:1", "piecewise:1:1.5,10:3".
    std::string spec() const;
    static AxisLaw parse(const std::string& spec);

    friend bool operator==(const AxisLaw&, const AxisLaw&) = default;

  private:
    AxisLaw() = default;
    static AxisLaw from_parts(std::vector<PowerSegment> segments, std::vector<Atom> atoms);

    Kind kind_ = Kind::derived;
    double parameter_ = 0.0;
    std::vector<LawPiece> pieces_;
    std::vector<PowerSegment> segments_;
    std::vector<Atom> atoms_;
};

}  // namespace ellperc
