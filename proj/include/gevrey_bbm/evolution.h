#ifndef GEVREY_BBM_EVOLUTION_H_
#define GEVREY_BBM_EVOLUTION_H_

#include <functional>
#include <utility>
#include <vector>

#include "gevrey_bbm/error.h"
#include "gevrey_bbm/multipliers.h"
#include "gevrey_bbm/norms.h"
#include "gevrey_bbm/spectral_core.h"

namespace gevrey_bbm {

// Any |c_j| above this (or a non-finite coefficient) counts as blowup.
inline constexpr double kBlowupThreshold = 1e12;

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  // One report per stored state, evaluated with the weight passed to the
  // producer.
  std::vector<NormReport> reports;
  ModelParams params;
};

struct PicardDiagnostics {
  // sup-in-time ||I(u_{k+1} - u_k)||_{H^{alpha/2}} per iteration.
  std::vector<double> iterate_distances;
  double contraction_factor = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct PicardOptions {
  double tol = 1e-10;
  int max_iter = 50;
  // Uniform tau nodes on [0, delta], endpoints included.
  int quadrature_nodes = 64;
};

class BlowupError : public Error {
 public:
  BlowupError(double time, const std::string& message)
      : Error(ErrorKind::kBlowupDetected, message), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class NoConvergenceError : public Error {
 public:
  explicit NoConvergenceError(PicardDiagnostics diagnostics);
  const PicardDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  PicardDiagnostics diagnostics_;
};

// u^2 evaluated pseudospectrally, 2/3-dealiased, Nyquist zeroed.
SpectralField nonlinear_term(const SpectralField& field);

// u_t = -phi(D)(u + u^2 / 2).
SpectralField rhs(const SpectralField& field, double alpha, bool linear_only = false);

SpectralField step_rk4(const SpectralField& field, double dt, double alpha,
                       bool linear_only = false);

// 1 / (8 c ||I u0||_{H^{alpha/2}}); +infinity for zero data.
double lifespan(const SpectralField& u0, const GevreyWeight& weight, double alpha, double c);

std::pair<Trajectory, PicardDiagnostics> picard_solve(const SpectralField& u0, double delta,
                                                      double alpha, const GevreyWeight& weight,
                                                      const PicardOptions& options = {});

// Called after every accepted step (and once at t = 0).
using StepObserver = std::function<void(double t, const SpectralField& state)>;

// RK4 from 0 to params.t_end. States are stored every `sample_every` steps
// plus the final one. Throws BlowupError on non-finite or huge coefficients.
Trajectory simulate(const SpectralField& u0, const ModelParams& params,
                    const GevreyWeight& weight, int sample_every,
                    const StepObserver& observer = {});

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_EVOLUTION_H_
