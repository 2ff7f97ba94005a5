#include "aafermi/sweep.hpp"

#include "aafermi/version.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace aafermi {

std::vector<double> draw_phases(int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("draw_phases: count must be >= 1");
  std::mt19937_64 engine(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    double phi = unit * kTwoPi;
    if (phi >= kTwoPi) phi = std::nextafter(kTwoPi, 0.0);
    out.push_back(phi);
  }
  return out;
}

std::vector<double> SweepSpec::resolved_phases() const {
  if (phase_draw) return draw_phases(phase_draw->count, phase_draw->seed);
  return phases;
}

std::size_t SweepSpec::point_count() const {
  const std::size_t n_phi = phase_draw ? static_cast<std::size_t>(phase_draw->count) : phases.size();
  return lengths.size() * delta_over_j.size() * epsilon_over_j.size() * n_phi;
}

void validate(const SweepSpec& spec) {
  if (spec.lengths.empty()) throw std::invalid_argument("sweep: no lattice lengths given");
  if (spec.delta_over_j.empty()) throw std::invalid_argument("sweep: no Delta/J values given");
  if (spec.epsilon_over_j.empty()) throw std::invalid_argument("sweep: no epsilon/J values given");
  if (spec.phase_draw) {
    if (!spec.phases.empty()) {
      throw std::invalid_argument("sweep: give either explicit phases or a seeded draw, not both");
    }
    if (spec.phase_draw->count < 1) throw std::invalid_argument("sweep: phase count must be >= 1");
  } else if (spec.phases.empty()) {
    throw std::invalid_argument("sweep: no phases given");
  }
  if (spec.t_max) (void)TimeGrid(*spec.t_max, spec.n_samples);
  if (spec.n_samples < 2) throw std::invalid_argument("sweep: need at least 2 samples");
  if (spec.refine && !(spec.rel_tol > 0.0)) throw std::invalid_argument("sweep: rel_tol must be > 0");
  for (double d : spec.delta_over_j) {
    if (!(d >= 0.0)) throw std::invalid_argument("sweep: Delta/J must be >= 0");
  }
  for (double e : spec.epsilon_over_j) {
    if (!(e >= 0.0)) throw std::invalid_argument("sweep: epsilon/J must be >= 0");
  }
  for (int length : spec.lengths) {
    LatticeConfig c;
    c.length = length;
    c.hopping = spec.hopping;
    c.incommensuration = spec.incommensuration;
    c.impurity_site = spec.impurity_site;
    c.boundary = spec.boundary;
    validate(c);
  }
}

std::vector<double> arithmetic_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
  if (stop < start) throw std::invalid_argument("range is empty (stop < start)");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    out.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
  }
  return out;
}

namespace {

const std::map<std::string, std::string>& section(const IniDocument& doc, const std::string& name) {
  static const std::map<std::string, std::string> empty;
  const auto it = doc.find(name);
  return it == doc.end() ? empty : it->second;
}

std::optional<std::string> lookup(const IniDocument& doc, const std::string& sec, const std::string& key) {
  const auto& s = section(doc, sec);
  const auto it = s.find(key);
  if (it == s.end()) return std::nullopt;
  return it->second;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(parse_double(item));
  }
  return out;
}

std::vector<double> parse_axis(const IniDocument& doc, const std::string& name) {
  const auto values = lookup(doc, name, "values");
  const auto range = lookup(doc, name, "range");
  if (values && range) throw std::invalid_argument("[" + name + "]: give values or range, not both");
  if (values) return parse_list(*values);
  if (range) {
    const auto parts = split(*range, ':');
    if (parts.size() != 3) throw std::invalid_argument("[" + name + "]: range must be start:stop:step");
    return arithmetic_range(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
  }
  return {};
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "yes" || text == "1" || text == "on") return true;
  if (text == "false" || text == "no" || text == "0" || text == "off") return false;
  throw std::invalid_argument("not a boolean: '" + text + "'");
}

void reject_unknown(const IniDocument& doc) {
  static const std::map<std::string, std::set<std::string>> known = {
      {"lattice", {"lengths", "hopping", "beta", "impurity_site", "boundary"}},
      {"delta", {"values", "range"}},
      {"epsilon", {"values", "range"}},
      {"phase", {"values", "count", "seed"}},
      {"grid", {"t_max", "samples"}},
      {"report", {"refine", "rel_tol"}},
      {"output", {"path"}},
  };
  for (const auto& [name, entries] : doc) {
    const auto it = known.find(name);
    if (it == known.end()) throw std::invalid_argument("unknown section [" + name + "]");
    for (const auto& [key, value] : entries) {
      if (!it->second.contains(key)) {
        throw std::invalid_argument("unknown key '" + key + "' in [" + name + "]");
      }
    }
  }
}

}  // namespace

SweepSpec sweep_spec_from_ini(const IniDocument& doc) {
  reject_unknown(doc);
  SweepSpec spec;
  if (auto v = lookup(doc, "lattice", "hopping")) spec.hopping = parse_double(*v);
  if (auto v = lookup(doc, "lattice", "beta")) {
    spec.incommensuration = (*v == "golden") ? kGoldenRatio : parse_double(*v);
  }
  if (auto v = lookup(doc, "lattice", "impurity_site")) spec.impurity_site = parse_int(*v);
  if (auto v = lookup(doc, "lattice", "boundary")) spec.boundary = boundary_from_string(*v);
  if (auto v = lookup(doc, "lattice", "lengths")) {
    for (const auto& item : split(*v, ',')) spec.lengths.push_back(parse_int(item));
  }
  spec.delta_over_j = parse_axis(doc, "delta");
  spec.epsilon_over_j = parse_axis(doc, "epsilon");

  const auto phase_values = lookup(doc, "phase", "values");
  const auto phase_count = lookup(doc, "phase", "count");
  const auto phase_seed = lookup(doc, "phase", "seed");
  if (phase_values && phase_count) throw std::invalid_argument("[phase]: give values or count, not both");
  if (phase_count) {
    if (!phase_seed) throw std::invalid_argument("[phase]: count requires a seed");
    spec.phase_draw = PhaseDraw{parse_int(*phase_count), std::stoull(*phase_seed)};
  } else if (phase_values) {
    spec.phases = parse_list(*phase_values);
  } else {
    spec.phases = {0.0};
  }

  if (auto v = lookup(doc, "grid", "t_max")) spec.t_max = parse_double(*v);
  if (auto v = lookup(doc, "grid", "samples")) spec.n_samples = parse_int(*v);
  if (auto v = lookup(doc, "report", "refine")) spec.refine = parse_bool(*v);
  if (auto v = lookup(doc, "report", "rel_tol")) spec.rel_tol = parse_double(*v);
  if (auto v = lookup(doc, "output", "path")) spec.output_path = *v;

  validate(spec);
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  const IniDocument doc = parse_ini_file(path);
  try {
    return sweep_spec_from_ini(doc);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

LatticeConfig RunRecord::lattice() const {
  LatticeConfig c;
  c.length = length;
  c.hopping = hopping;
  c.potential_strength = delta_over_j * hopping;
  c.impurity_coupling = epsilon_over_j * hopping;
  c.incommensuration = incommensuration;
  c.phase = phase;
  c.impurity_site = impurity_site;
  c.boundary = boundary;
  return c;
}

std::string RunRecord::key() const {
  std::ostringstream os;
  os << length << ',' << format_double(hopping) << ',' << format_double(delta_over_j) << ','
     << format_double(epsilon_over_j) << ',' << format_double(incommensuration) << ','
     << format_double(phase) << ',' << impurity_site << ',' << to_string(boundary) << ','
     << format_double(t_max) << ',' << n_samples;
  return os.str();
}

std::string run_record_header() {
  return "length,hopping,delta_over_j,epsilon_over_j,beta,phi,impurity_site,boundary,t_max,"
         "n_samples,backflow,outflow,ratio,final_abs_chi,converged,status,message";
}

namespace {

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ch == ',' ? ';' : ' ';
  }
  return s;
}

}  // namespace

std::string run_record_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.key() << ',' << format_double(r.backflow) << ',' << format_double(r.outflow) << ','
     << format_double(r.ratio) << ',' << format_double(r.final_magnitude) << ','
     << (r.converged ? (*r.converged ? "true" : "false") : "n/a") << ','
     << (r.ok ? "ok" : "error") << ',' << sanitize(r.message);
  return os.str();
}

RunRecord parse_run_record(const std::string& row) {
  const auto f = split(row, ',');
  if (f.size() < 17) throw std::invalid_argument("run record has too few columns: '" + row + "'");
  RunRecord r;
  r.length = parse_int(f[0]);
  r.hopping = parse_double(f[1]);
  r.delta_over_j = parse_double(f[2]);
  r.epsilon_over_j = parse_double(f[3]);
  r.incommensuration = parse_double(f[4]);
  r.phase = parse_double(f[5]);
  r.impurity_site = parse_int(f[6]);
  r.boundary = boundary_from_string(f[7]);
  r.t_max = parse_double(f[8]);
  r.n_samples = parse_int(f[9]);
  r.backflow = parse_double(f[10]);
  r.outflow = parse_double(f[11]);
  r.ratio = parse_double(f[12]);
  r.final_magnitude = parse_double(f[13]);
  if (f[14] == "true") r.converged = true;
  else if (f[14] == "false") r.converged = false;
  r.ok = f[15] == "ok";
  r.message = f[16];
  if (f.size() > 17 && !f[17].empty()) r.runtime_seconds = parse_double(f[17]);
  return r;
}

RunRecord evaluate_point(const RunRecord& params, bool refine, double rel_tol,
                         const EvaluationOptions& options) {
  RunRecord r = params;
  const auto start = std::chrono::steady_clock::now();
  try {
    const TimeGrid grid(r.t_max, r.n_samples);
    const EchoProblem problem = EchoProblem::charge_density_wave(r.lattice());
    BackflowReport report;
    if (refine) {
      RefinementResult refined = refine_until_stable(problem, grid, rel_tol, options);
      r.converged = refined.converged;
      report = std::move(refined.report);
    } else {
      report = backflow_report(decoherence_series(problem, grid, options));
    }
    r.backflow = report.backflow;
    r.outflow = report.outflow;
    r.ratio = report.ratio;
    r.final_magnitude = report.final_magnitude;
    r.ok = true;
    r.message.clear();
  } catch (const std::exception& e) {
    r.ok = false;
    r.message = e.what();
    r.backflow = r.outflow = r.ratio = r.final_magnitude = std::nan("");
  }
  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

bool record_less(const RunRecord& a, const RunRecord& b) {
  return std::tie(a.length, a.delta_over_j, a.epsilon_over_j, a.phase) <
         std::tie(b.length, b.delta_over_j, b.epsilon_over_j, b.phase);
}

std::vector<RunRecord> expand(const SweepSpec& spec) {
  std::vector<RunRecord> jobs;
  const auto phases = spec.resolved_phases();
  for (int length : spec.lengths) {
    for (double d : spec.delta_over_j) {
      for (double e : spec.epsilon_over_j) {
        for (double phi : phases) {
          RunRecord r;
          r.length = length;
          r.hopping = spec.hopping;
          r.delta_over_j = d;
          r.epsilon_over_j = e;
          r.incommensuration = spec.incommensuration;
          r.phase = canonical_phase(phi);
          r.impurity_site = spec.impurity_site;
          r.boundary = spec.boundary;
          r.t_max = spec.t_max ? *spec.t_max : default_t_max(r.lattice());
          r.n_samples = spec.n_samples;
          jobs.push_back(r);
        }
      }
    }
  }
  std::sort(jobs.begin(), jobs.end(), record_less);
  return jobs;
}

void load_completed(const std::string& path, std::map<std::string, RunRecord>& done) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    try {
      RunRecord r = parse_run_record(line);
      if (r.ok) done[r.key()] = std::move(r);
    } catch (const std::exception&) {
      // A torn final line from an interrupted run; recompute that tuple.
    }
  }
}

std::string journal_path(const std::string& output) { return output + ".partial"; }

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<RunRecord>& records) {
  out << "# aafermi sweep\n";
  out << "# version = " << kVersion << '\n';
  if (spec.phase_draw) {
    out << "# phases = " << spec.phase_draw->count << " uniform draws, mt19937_64 seed = "
        << spec.phase_draw->seed << '\n';
  } else {
    out << "# phases = explicit\n";
  }
  out << "# grid: t_max = "
      << (spec.t_max ? format_double(*spec.t_max) : "50/epsilon (50/J at epsilon = 0)")
      << " samples = " << spec.n_samples << '\n';
  out << "# refine = " << (spec.refine ? "true" : "false");
  if (spec.refine) out << " rel_tol = " << format_double(spec.rel_tol);
  out << '\n';
  out << "# flows accumulated from t = 0\n";
  out << run_record_header() << '\n';
  for (const auto& r : records) out << run_record_row(r) << '\n';
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  validate(spec);
  std::vector<RunRecord> jobs = expand(spec);

  std::map<std::string, RunRecord> done;
  if (options.resume && !spec.output_path.empty()) {
    load_completed(spec.output_path, done);
    load_completed(journal_path(spec.output_path), done);
  }

  std::vector<std::size_t> pending;
  std::vector<RunRecord> results(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto it = done.find(jobs[i].key());
    if (it != done.end()) {
      results[i] = it->second;
    } else {
      pending.push_back(i);
    }
  }

  std::ofstream journal;
  if (!spec.output_path.empty()) {
    const auto parent = std::filesystem::path(spec.output_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    journal.open(journal_path(spec.output_path), options.resume ? std::ios::app : std::ios::trunc);
    if (!journal) {
      throw std::runtime_error("cannot open journal '" + journal_path(spec.output_path) + "'");
    }
    if (!options.resume || journal.tellp() == 0) {
      journal << run_record_header() << ",runtime_seconds\n";
    }
  }

  std::mutex sink;
  std::atomic<std::size_t> next{0};
  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(pending.size(), 1)));
  // Tuples run in parallel; each evaluation stays on its worker thread.
  const EvaluationOptions inner{workers > 1 ? 1u : 0u};

  auto work = [&]() {
    while (true) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= pending.size()) return;
      const std::size_t i = pending[slot];
      RunRecord r = evaluate_point(jobs[i], spec.refine, spec.rel_tol, inner);
      std::lock_guard lock(sink);
      if (journal.is_open()) {
        journal << run_record_row(r) << ',' << format_double(r.runtime_seconds) << '\n';
        journal.flush();
      }
      if (!options.quiet) {
        std::cerr << "[" << (slot + 1) << "/" << pending.size() << "] " << r.key() << " -> "
                  << (r.ok ? "R = " + format_double(r.ratio) : "error: " + r.message) << '\n';
      }
      results[i] = std::move(r);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  if (!spec.output_path.empty()) {
    journal.close();
    const std::string tmp = spec.output_path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
      write_sweep_csv(out, spec, results);
      out.flush();
      if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    std::filesystem::rename(tmp, spec.output_path);
    std::filesystem::remove(journal_path(spec.output_path));
  }
  return results;
}

}  // namespace aafermi
