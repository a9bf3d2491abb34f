#include "cli_app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pdtv/certificates.hpp"
#include "pdtv/field.hpp"
#include "pdtv/imageio.hpp"
#include "pdtv/operators.hpp"
#include "pdtv/pde_sim.hpp"
#include "pdtv/solver.hpp"

namespace pdtv::cli {

namespace {

SchemeKind parse_scheme(const std::string& name) {
  if (name == "standard") return SchemeKind::standard;
  if (name == "staggered") return SchemeKind::staggered;
  throw CLI::ValidationError("--scheme", "must be 'standard' or 'staggered'");
}

/// "--phantom KIND:NxM" shortcut, e.g. rect:64x64, disk:128x128, blob:64x64.
ScalarField phantom_from_shortcut(const std::string& text) {
  const auto colon = text.find(':');
  const auto x = text.find('x', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || x == std::string::npos)
    throw std::domain_error("phantom shortcut must look like rect:64x64");
  const std::string kind = text.substr(0, colon);
  int rows = 0, cols = 0;
  try {
    rows = std::stoi(text.substr(colon + 1, x - colon - 1));
    cols = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    throw std::domain_error("phantom shortcut must look like rect:64x64");
  }
  if (kind == "rect") return make_phantom(centered_rectangle(rows, cols));
  if (kind == "disk")
    return make_phantom(centered_disk(rows, cols, std::min(rows, cols) / 4.0));
  if (kind == "blob") return make_phantom(default_blob(rows, cols));
  throw std::domain_error("phantom kind must be rect, disk or blob");
}

struct DenoiseArgs {
  std::string input, phantom, output, trace;
  double lambda = 0.005;
  double dt = 0.0, dtau = 0.0;  // 0 = derive from lambda
  std::string scheme = "standard";
  long max_iter = 50000;
  double tol = 0.0;
  long log_every = 100;
  long oracle_iters = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  bool clamp = false;
};

int do_denoise(const DenoiseArgs& a) {
  if (a.input.empty() == a.phantom.empty()) {
    std::cerr << "denoise: exactly one of --input / --phantom is required\n";
    return kUsage;
  }
  ScalarField f = a.input.empty() ? phantom_from_shortcut(a.phantom)
                                  : read_pgm(a.input);
  if (a.sigma > 0.0) f = add_gaussian_noise(f, a.sigma, a.seed);

  ProblemSpec spec = make_rof_spec(f, a.lambda);
  if (a.dt > 0.0) spec.dt = a.dt;
  if (a.dtau > 0.0) spec.dtau = a.dtau;
  spec.scheme = parse_scheme(a.scheme);
  spec.clamp01 = a.clamp;
  spec.max_iter = a.max_iter;
  spec.log_every = a.log_every;
  spec.tol = a.tol;

  std::optional<ScalarField> reference;
  if (a.oracle_iters > 0)
    reference = oracle_rof(f, a.lambda, spec.scheme, a.oracle_iters).u;

  VectorField xi0(f.rows(), f.cols(), 2);
  const RunResult res = run(spec, f, std::move(xi0),
                            reference ? &*reference : nullptr);

  if (!a.output.empty()) write_pgm(res.state.u, a.output);
  if (!a.trace.empty()) write_certificate_csv(a.trace, res.trace);
  std::cout << "denoise: " << res.state.iter << " iterations, "
            << (res.tol_reached ? "tolerance reached" : "iteration budget used")
            << "\n";
  return (a.tol > 0.0 && !res.tol_reached) ? kBackstop : kOk;
}

struct SegmentArgs {
  std::string input, seeds, output, mask, trace;
  double beta = 0.05, eps = 0.01;
  double f_plus = 0.0, f_minus = 0.0;
  double dt = 0.2, dtau = 0.2;
  double thresh = 0.5;
  std::string scheme = "standard";
  bool clamp = true;
  long max_iter = 50000;
  double tol = 0.0;
  long log_every = 100;
};

int do_segment(const SegmentArgs& a) {
  const ScalarField image = read_pgm(a.input);
  const ScalarField seed_img = read_pgm(a.seeds);
  if (!image.same_shape(seed_img))
    throw DimensionError("segment: seed mask shape does not match the input");
  if (!(a.thresh > 0.0 && a.thresh < 1.0))
    throw std::domain_error("segment: --threshold must lie in (0,1)");

  const int N = image.rows(), M = image.cols();
  SeedMask seeds(N, M);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < M; ++j) {
      const double v = seed_img(i, j);
      if (v >= 255.0) seeds(i, j) = SeedTag::pin1;
      else if (v <= 0.0) seeds(i, j) = SeedTag::pin0;
    }

  ProblemSpec spec = make_seg_spec(ScalarField(N, M, a.f_plus),
                                   ScalarField(N, M, a.f_minus), seeds,
                                   edge_weight(image, a.beta, a.eps));
  spec.dt = a.dt;
  spec.dtau = a.dtau;
  spec.scheme = parse_scheme(a.scheme);
  spec.clamp01 = a.clamp;
  spec.max_iter = a.max_iter;
  spec.log_every = a.log_every;
  spec.tol = a.tol;

  ScalarField u0(N, M, 0.5);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < M; ++j) {
      if (seeds(i, j) == SeedTag::pin0) u0(i, j) = 0.0;
      else if (seeds(i, j) == SeedTag::pin1) u0(i, j) = 1.0;
    }

  const RunResult res = run(spec, std::move(u0), VectorField(N, M, 2));

  if (!a.output.empty()) {
    // relaxed labeling in [0,1] scaled onto the 8-bit range
    ScalarField scaled = res.state.u;
    for (double& v : scaled.values()) v *= 255.0;
    write_pgm(scaled, a.output);
  }
  if (!a.mask.empty()) {
    ScalarField mask = threshold(res.state.u, a.thresh);
    for (double& v : mask.values()) v *= 255.0;
    write_pgm(mask, a.mask);
  }
  if (!a.trace.empty()) write_certificate_csv(a.trace, res.trace);
  std::cout << "segment: " << res.state.iter << " iterations, "
            << (res.tol_reached ? "tolerance reached" : "iteration budget used")
            << "\n";
  return (a.tol > 0.0 && !res.tol_reached) ? kBackstop : kOk;
}

struct Demo1dArgs {
  int n = 256;
  double dt = 0.0;  // 0 = 0.5/n
  long steps = -1;  // -1 = integrate to t=2
  std::string trajectory, study;
};

int do_demo1d(const Demo1dArgs& a) {
  if (a.n < 2) throw ConfigError("demo1d: --n must be >= 2");
  const double dt = a.dt > 0.0 ? a.dt : 0.5 / a.n;
  const long steps =
      a.steps >= 0 ? a.steps : static_cast<long>(std::llround(2.0 / dt));

  // Convergence study at t = 1 (always at the stability limit).
  std::string study_csv = "n,dt,sup_error\n";
  double errs[3];
  const int sizes[3] = {64, 128, 256};
  for (int s = 0; s < 3; ++s) {
    const int n = sizes[s];
    const double dtn = 0.5 / n;
    auto [u0, xi0] = analytic_oscillation(0.0, n);
    const Trajectory1d t = simulate_1d(n, dtn, 2L * n, u0, xi0);
    errs[s] = t.sup_error.back();
    char line[96];
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", n, dtn, errs[s]);
    study_csv += line;
  }
  const double order1 = std::log2(errs[0] / errs[1]);
  const double order2 = std::log2(errs[1] / errs[2]);

  // Oscillation exhibit over one full period at the requested resolution.
  auto [u0, xi0] = analytic_oscillation(0.0, a.n);
  const Trajectory1d exhibit = simulate_1d(a.n, dt, steps, u0, xi0);
  if (!a.trajectory.empty()) write_trajectory_csv(a.trajectory, exhibit);
  if (!a.study.empty()) {
    std::ofstream f(a.study, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + a.study);
    f << study_csv;
  }

  // Floor check on an internal full-period run (independent of --steps).
  const auto [fu0, fxi0] = analytic_oscillation(0.0, a.n);
  const double fdt = 0.5 / a.n;
  const Trajectory1d full =
      simulate_1d(a.n, fdt, static_cast<long>(std::llround(2.0 / fdt)), fu0, fxi0);
  double peak = 0.0, floor_val = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < full.t.size(); ++i) {
    peak = std::max(peak, full.u_l2[i]);
    if (full.t[i] >= 1.4 && full.t[i] <= 1.6)
      floor_val = std::min(floor_val, full.u_l2[i]);
  }

  std::cout << "demo1d: orders " << order1 << ", " << order2
            << "; |u|_2 floor/peak " << floor_val / peak << "\n";
  const bool ok = order1 >= 0.9 && order2 >= 0.9 && floor_val >= 0.2 * peak;
  return ok ? kOk : 1;
}

struct PhantomArgs {
  std::string kind = "rect";
  int rows = 64, cols = 64;
  double fg = 255.0, bg = 0.0;
  std::vector<int> rect;          // r0 c0 r1 c1
  std::vector<double> center;     // cr cc
  double radius = -1.0;
  std::vector<double> lobe_flat;  // triples cr cc r
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string output;
};

int do_phantom(const PhantomArgs& a) {
  PhantomSpec spec;
  if (a.kind == "rect") {
    spec = centered_rectangle(a.rows, a.cols, a.fg, a.bg);
    if (!a.rect.empty()) {
      if (a.rect.size() != 4)
        throw std::domain_error("--rect needs r0 c0 r1 c1");
      spec.row0 = a.rect[0];
      spec.col0 = a.rect[1];
      spec.row1 = a.rect[2];
      spec.col1 = a.rect[3];
    }
  } else if (a.kind == "disk") {
    spec = centered_disk(a.rows, a.cols,
                         a.radius >= 0.0 ? a.radius : std::min(a.rows, a.cols) / 4.0,
                         a.fg, a.bg);
    if (a.center.size() == 2) {
      spec.center_row = a.center[0];
      spec.center_col = a.center[1];
    } else if (!a.center.empty()) {
      throw std::domain_error("--center needs row col");
    }
  } else if (a.kind == "blob") {
    spec = default_blob(a.rows, a.cols, a.fg, a.bg);
    if (!a.lobe_flat.empty()) {
      if (a.lobe_flat.size() % 3 != 0)
        throw std::domain_error("--lobe needs triples: row col radius");
      spec.lobes.clear();
      for (std::size_t i = 0; i < a.lobe_flat.size(); i += 3)
        spec.lobes.push_back(
            {a.lobe_flat[i], a.lobe_flat[i + 1], a.lobe_flat[i + 2]});
    }
  } else {
    throw std::domain_error("--kind must be rect, disk or blob");
  }

  ScalarField img = make_phantom(spec);
  if (a.sigma > 0.0) img = add_gaussian_noise(img, a.sigma, a.seed);
  write_pgm(img, a.output);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Primal-dual total-variation solver with a posteriori stopping bounds"};
  app.require_subcommand(1);
  // --config may follow the subcommand name; unmatched flags fall through to
  // the top level where the config option lives. File keys are flat
  // `subcommand.option = value` lines (or INI [subcommand] sections); command
  // line flags override file values, which override defaults.
  app.fallthrough();
  app.set_config("--config", "",
                 "key = value file, keys like denoise.max-iter");

  DenoiseArgs dn;
  CLI::App* denoise = app.add_subcommand("denoise", "ROF denoising");
  denoise->add_option("--input", dn.input, "input PGM (P5) image");
  denoise->add_option("--phantom", dn.phantom,
                      "synthetic input, e.g. rect:64x64 / disk:64x64 / blob:64x64");
  denoise->add_option("--sigma", dn.sigma, "noise level added to the input")
      ->check(CLI::NonNegativeNumber);
  denoise->add_option("--seed", dn.seed, "noise seed");
  denoise->add_option("--lambda", dn.lambda, "fidelity weight")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  denoise->add_option("--dt", dn.dt, "primal step (default 1/lambda)");
  denoise->add_option("--dtau", dn.dtau, "dual step (default lambda/5)");
  denoise->add_option("--scheme", dn.scheme, "standard | staggered")
      ->capture_default_str();
  denoise->add_option("--max-iter", dn.max_iter, "iteration budget")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  denoise->add_option("--tol", dn.tol,
                      "stop once the distance bound drops below this");
  denoise->add_option("--log-every", dn.log_every, "certificate cadence")
      ->capture_default_str();
  denoise->add_option("--oracle-iters", dn.oracle_iters,
                      "also compute the true-error column against a reference "
                      "solve with this many dual-projection iterations");
  denoise->add_flag("--clamp", dn.clamp, "clamp u to [0,1] each step");
  denoise->add_option("--output", dn.output, "denoised PGM path");
  denoise->add_option("--trace", dn.trace, "certificate CSV path");

  SegmentArgs sg;
  CLI::App* segment = app.add_subcommand("segment", "seeded TV segmentation");
  segment->add_option("--input", sg.input, "input PGM image")->required();
  segment->add_option("--seeds", sg.seeds,
                      "seed PGM: 255 pins 1, 0 pins 0, else free")
      ->required();
  segment->add_option("--beta", sg.beta, "edge-weight sharpness")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  segment->add_option("--eps", sg.eps, "edge-weight floor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  segment->add_option("--f-plus", sg.f_plus, "constant foreground data weight")
      ->check(CLI::NonNegativeNumber);
  segment->add_option("--f-minus", sg.f_minus, "constant background data weight")
      ->check(CLI::NonNegativeNumber);
  segment->add_option("--dt", sg.dt, "primal step")->capture_default_str();
  segment->add_option("--dtau", sg.dtau, "dual step")->capture_default_str();
  segment->add_option("--threshold", sg.thresh, "mask level in (0,1)")
      ->capture_default_str();
  segment->add_option("--scheme", sg.scheme, "standard | staggered")
      ->capture_default_str();
  segment->add_flag("--clamp,!--no-clamp", sg.clamp, "clamp u to [0,1] (default on)");
  segment->add_option("--max-iter", sg.max_iter, "iteration budget")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  segment->add_option("--tol", sg.tol,
                      "stop once the energy-gap bound drops below this");
  segment->add_option("--log-every", sg.log_every, "certificate cadence")
      ->capture_default_str();
  segment->add_option("--output", sg.output, "relaxed labeling PGM (scaled x255)");
  segment->add_option("--mask", sg.mask, "binary mask PGM at --threshold");
  segment->add_option("--trace", sg.trace, "certificate CSV path");

  Demo1dArgs d1;
  CLI::App* demo1d = app.add_subcommand(
      "demo1d", "1-D wave validation: convergence study + oscillation exhibit");
  demo1d->add_option("--n", d1.n, "grid cells for the exhibit run")
      ->capture_default_str();
  demo1d->add_option("--dt", d1.dt, "time step (default 0.5/n, the stability limit)");
  demo1d->add_option("--steps", d1.steps, "exhibit steps (default: to t=2)");
  demo1d->add_option("--trajectory", d1.trajectory, "exhibit CSV path");
  demo1d->add_option("--study", d1.study, "convergence-study CSV path");

  PhantomArgs ph;
  CLI::App* phantom = app.add_subcommand("phantom", "synthetic test images");
  phantom->add_option("--kind", ph.kind, "rect | disk | blob")->capture_default_str();
  phantom->add_option("--rows", ph.rows, "grid rows")->capture_default_str();
  phantom->add_option("--cols", ph.cols, "grid cols")->capture_default_str();
  phantom->add_option("--fg", ph.fg, "foreground value")->capture_default_str();
  phantom->add_option("--bg", ph.bg, "background value")->capture_default_str();
  phantom->add_option("--rect", ph.rect, "rectangle r0 c0 r1 c1 (half-open)")
      ->expected(4);
  phantom->add_option("--center", ph.center, "disk center: row col")->expected(2);
  phantom->add_option("--radius", ph.radius, "disk radius");
  phantom->add_option("--lobe", ph.lobe_flat, "blob lobe: row col radius (repeatable)")
      ->type_size(3);
  phantom->add_option("--sigma", ph.sigma, "noise level")
      ->check(CLI::NonNegativeNumber);
  phantom->add_option("--seed", ph.seed, "noise seed");
  phantom->add_option("--output", ph.output, "output PGM path")->required();

  try {
    // CLI11's vector overload consumes tokens from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (denoise->parsed()) return do_denoise(dn);
    if (segment->parsed()) return do_segment(sg);
    if (demo1d->parsed()) return do_demo1d(d1);
    if (phantom->parsed()) return do_phantom(ph);
    return kUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;  // the file was readable; its contents are broken
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace pdtv::cli
