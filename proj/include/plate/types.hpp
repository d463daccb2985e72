#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace plate {

using Index = Eigen::Index;

template <typename Scalar> using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar> using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;
using Point2 = Eigen::Vector2d;

enum class Problem { Neumann, Steklov };

inline char const *to_string(Problem p) { return p == Problem::Neumann ? "neumann" : "steklov"; }

// Base of all errors raised by the library. `kind` is a short machine-readable tag.
class Error : public std::runtime_error
{
public:
  Error(std::string kind, std::string const &what)
    : std::runtime_error(what)
    , kind_(std::move(kind))
  {
  }
  std::string const &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct DomainError : Error
{
  explicit DomainError(std::string const &what)
    : Error("domain", what)
  {
  }
};

struct ConvergenceError : Error
{
  explicit ConvergenceError(std::string const &what)
    : Error("convergence", what)
  {
  }
};

struct ClassPError : Error
{
  explicit ClassPError(std::string const &what)
    : Error("class-P", what)
  {
  }
};

// Volume of the unit ball in dimension N.
inline double unit_ball_volume(int N)
{
  switch (N) {
  case 2: return 3.14159265358979323846;
  case 3: return 4.0 / 3.0 * 3.14159265358979323846;
  default: throw DomainError("unit_ball_volume: dimension must be 2 or 3");
  }
}

} // namespace plate
