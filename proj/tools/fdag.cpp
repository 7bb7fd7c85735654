// Command-line front end: enumeration, compression, validation, subforest
// mining, matrix conversions and CSV benchmarks.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fdag/fdag.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input/output plumbing: missing or "-" means the standard stream.
struct Input {
  std::ifstream file;
  std::istream& stream(const std::string& path) {
    if (path.empty() || path == "-") return std::cin;
    file.open(path);
    if (!file) throw fdag::FormatError(path + ": cannot open for reading");
    return file;
  }
  static std::string display(const std::string& path) {
    return path.empty() || path == "-" ? "<stdin>" : path;
  }
};

struct Output {
  std::ofstream file;
  std::ostream& stream(const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw fdag::FormatError(path + ": cannot open for writing");
    return file;
  }
};

fdag::Support parse_support(const std::string& text) {
  std::uint64_t num = 0, den = 1;
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      num = std::stoull(text);
    } else {
      num = std::stoull(text.substr(0, slash));
      den = std::stoull(text.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw UsageError("--sigma expects a rational like 1/2");
  }
  if (den == 0 || num > den) throw UsageError("--sigma must lie in [0, 1]");
  return {num, den};
}

unsigned thread_count(bool parallel) {
  if (!parallel) return 1;
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 2 : n;
}

// Average wall time of one call, repeating short calls for a stable reading.
template <typename Fn>
double time_call_ns(Fn&& fn) {
  using clock = std::chrono::steady_clock;
  constexpr auto kMinSample = std::chrono::microseconds(50);
  std::size_t iterations = 0;
  auto begin = clock::now();
  do {
    fn();
    ++iterations;
  } while (clock::now() - begin < kMinSample);
  auto elapsed = clock::now() - begin;
  return static_cast<double>(
             std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count()) /
         static_cast<double>(iterations);
}

struct BenchOptions {
  std::uint64_t seed = 0;
  int reps = 10;
  int max_k = 100;
  std::uint64_t budget = 10'000'000;
};

void for_each_bench_fdag(const BenchOptions& opt,
                         const std::function<void(const fdag::Fdag&)>& fn) {
  for (int k = 1; k <= opt.max_k; ++k)
    for (int r = 0; r < opt.reps; ++r)
      fn(fdag::random_fdag(k, opt.seed + static_cast<std::uint64_t>(k * opt.reps + r)));
}

void emit_record(std::ostream& out, const fdag::Fdag& d, bool oneline) {
  if (oneline) {
    out << fdag::canonical_line(d) << '\n';
  } else {
    fdag::write_fdag(out, d);
    out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumeration and mining of forests of unordered trees in compressed form"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  std::string sigma_text = "0";
  std::uint64_t seed = 0;
  int steps = -1;
  std::optional<int> max_vertices, max_outdegree, max_height;
  bool oneline = false, parallel = false;
  std::string strategy = "incremental";
  BenchOptions bench;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", out_path, "Write to this file instead of stdout");
  };

  auto* cmd_enumerate = app.add_subcommand("enumerate", "Enumerate FDAGs from the trivial one");
  cmd_enumerate->add_option("--steps", steps, "Cap on expansion steps")->check(CLI::NonNegativeNumber);
  cmd_enumerate->add_option("--max-vertices", max_vertices, "Cap on vertex count");
  cmd_enumerate->add_option("--max-outdegree", max_outdegree, "Cap on outdegree");
  cmd_enumerate->add_option("--max-height", max_height, "Cap on height");
  cmd_enumerate->add_flag("--oneline", oneline, "One canonical line per FDAG");
  cmd_enumerate->add_option("--strategy", strategy, "incremental|copying")
      ->check(CLI::IsMember({"incremental", "copying"}));
  cmd_enumerate->add_flag("--parallel", parallel, "Explore subtrees in parallel (unordered output)");
  add_output(cmd_enumerate);

  auto* cmd_count = app.add_subcommand("count", "Count FDAGs per expansion step");
  cmd_count->add_option("--steps", steps, "Number of levels")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd_count->add_flag("--parallel", parallel, "Use worker threads");
  add_output(cmd_count);

  auto* cmd_compress = app.add_subcommand("compress", "Reduce a forest file to a FDAG");
  cmd_compress->add_option("file", in_path, "Forest file (default stdin)");
  add_output(cmd_compress);

  auto* cmd_expand = app.add_subcommand("expand", "Decompress a FDAG file into a forest");
  cmd_expand->add_option("file", in_path, "FDAG file (default stdin)");
  add_output(cmd_expand);

  auto* cmd_validate = app.add_subcommand("validate", "Check the canonical FDAG constraints");
  cmd_validate->add_option("file", in_path, "FDAG file (default stdin)");
  add_output(cmd_validate);

  auto* cmd_random = app.add_subcommand("random", "Random FDAG by uniform successor choices");
  cmd_random->add_option("--steps", steps, "Walk length")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd_random->add_option("--seed", seed, "Random seed (default 0)");
  add_output(cmd_random);

  auto* cmd_subfdags = app.add_subcommand("subfdags", "Enumerate all subFDAGs of a FDAG");
  cmd_subfdags->add_option("file", in_path, "FDAG file (default stdin)");
  add_output(cmd_subfdags);

  auto* cmd_mine = app.add_subcommand("mine", "Frequent subFDAGs of a forest");
  cmd_mine->add_option("file", in_path, "Forest file (default stdin)");
  cmd_mine->add_option("--sigma", sigma_text, "Support threshold as a rational p/q (default 0)");
  add_output(cmd_mine);

  auto* cmd_quotient = app.add_subcommand("quotient", "Whole-host over per-source subFDAG counts");
  cmd_quotient->add_option("file", in_path, "FDAG file (default stdin)");
  add_output(cmd_quotient);

  auto* cmd_fishburn = app.add_subcommand("fishburn", "Row-Fishburn matrix conversions");
  cmd_fishburn->require_subcommand(1);
  auto* fb_to = cmd_fishburn->add_subcommand("to-matrix", "FDAG file to incremental matrix");
  fb_to->add_option("file", in_path, "FDAG file (default stdin)");
  add_output(fb_to);
  auto* fb_from = cmd_fishburn->add_subcommand("from-matrix", "Matrix file to FDAG");
  fb_from->add_option("file", in_path, "Matrix file (default stdin)");
  add_output(fb_from);
  auto* fb_enum = cmd_fishburn->add_subcommand("enumerate", "All matrices up to a size");
  fb_enum->add_option("--max-size", steps, "Largest matrix size")
      ->required()
      ->check(CLI::NonNegativeNumber);
  add_output(fb_enum);

  auto* cmd_bench = app.add_subcommand("bench", "CSV micro-benchmarks on random FDAGs");
  cmd_bench->require_subcommand(1);
  auto add_bench_options = [&](CLI::App* cmd) {
    cmd->add_option("--seed", bench.seed, "Random seed (default 0)");
    cmd->add_option("--reps", bench.reps, "Samples per walk length (default 10)");
    cmd->add_option("--max-k", bench.max_k, "Largest walk length (default 100)");
    add_output(cmd);
  };
  auto* bench_succ = cmd_bench->add_subcommand("successors", "Successor counts by vertex count");
  add_bench_options(bench_succ);
  auto* bench_delay = cmd_bench->add_subcommand("delay", "Successor construction time, copying mode");
  add_bench_options(bench_delay);
  auto* bench_quotient = cmd_bench->add_subcommand("quotient", "Mining quotient by vertex count");
  add_bench_options(bench_quotient);
  bench_quotient->add_option("--budget", bench.budget,
                             "Skip hosts with more enumerated states than this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Input input;
  Output output;
  try {
    std::string in_name = Input::display(in_path);

    if (*cmd_enumerate) {
      fdag::Constraint constraint{steps >= 0 ? std::optional<int>(steps) : std::nullopt,
                                  max_vertices, max_outdegree, max_height};
      if (!constraint.finite())
        throw UsageError(
            "enumeration needs --steps, or --max-outdegree with --max-vertices or --max-height");
      fdag::Property g = constraint.predicate();
      std::ostream& out = output.stream(out_path);
      if (parallel) {
        fdag::parallel_reverse_search(fdag::Fdag(), g, thread_count(true),
                                      [&](const fdag::Fdag& d, int) { emit_record(out, d, oneline); });
      } else if (strategy == "copying") {
        std::vector<fdag::Fdag> level{fdag::Fdag()};
        emit_record(out, level.front(), oneline);
        for (int k = 1; !level.empty(); ++k) {
          std::vector<fdag::Fdag> next;
          for (const fdag::Fdag& d : level)
            for (auto& [e, s] : fdag::successors(d))
              if (g(s, k)) {
                emit_record(out, s, oneline);
                next.push_back(std::move(s));
              }
          level = std::move(next);
        }
      } else {
        fdag::reverse_search(fdag::Fdag(), g, [&](const fdag::Fdag& d, int) {
          emit_record(out, d, oneline);
          return true;
        });
      }
      return 0;
    }

    if (*cmd_count) {
      auto counts = parallel ? fdag::parallel_level_counts(steps, thread_count(true))
                             : fdag::level_counts(steps);
      std::ostream& out = output.stream(out_path);
      for (std::size_t i = 0; i < counts.size(); ++i) out << (i ? "," : "") << counts[i];
      out << '\n';
      return 0;
    }

    if (*cmd_compress) {
      fdag::Forest forest = fdag::read_forest(input.stream(in_path), in_name);
      if (forest.empty()) throw fdag::FormatError(in_name + ": no trees in input");
      fdag::write_fdag(output.stream(out_path), fdag::reduce(forest));
      return 0;
    }

    if (*cmd_expand) {
      fdag::Fdag d = fdag::read_fdag(input.stream(in_path), in_name);
      fdag::write_forest(output.stream(out_path), fdag::expand(d));
      return 0;
    }

    if (*cmd_validate) {
      std::vector<fdag::Word> words;
      try {
        words = fdag::read_fdag_words(input.stream(in_path), in_name);
      } catch (const std::invalid_argument& e) {
        throw fdag::FormatError(in_name + ": " + e.what());
      }
      fdag::Validation v = fdag::validate(words);
      if (!v.ok()) {
        std::cerr << in_name << ": " << v.message << '\n';
        return kExitError;
      }
      output.stream(out_path) << "ok\n";
      return 0;
    }

    if (*cmd_random) {
      fdag::write_fdag(output.stream(out_path), fdag::random_fdag(steps, seed));
      return 0;
    }

    if (*cmd_subfdags) {
      fdag::Fdag d = fdag::read_fdag(input.stream(in_path), in_name);
      std::ostream& out = output.stream(out_path);
      std::uint64_t count = 0;
      fdag::enumerate_subfdags(d, [&](const fdag::PatternState& s) {
        out << fdag::canonical_line(fdag::induced_subfdag(d, s.delta)) << '\n';
        ++count;
        return true;
      });
      out << "total " << count << '\n';
      return 0;
    }

    if (*cmd_mine) {
      fdag::Support sigma = parse_support(sigma_text);
      fdag::Forest forest = fdag::read_forest(input.stream(in_path), in_name);
      if (forest.empty()) throw fdag::FormatError(in_name + ": no trees in input");
      fdag::ReduceResult reduced = fdag::reduce_with_roots(forest);
      auto origin_table = fdag::origins(reduced.dag, reduced.tree_roots);
      std::ostream& out = output.stream(out_path);
      std::uint64_t count = 0;
      fdag::frequent_subfdags(reduced.dag, origin_table, forest.size(), sigma,
                              [&](const fdag::PatternState& s) {
                                out << s.origin.size() << '/' << forest.size() << ' '
                                    << fdag::canonical_line(fdag::induced_subfdag(reduced.dag, s.delta))
                                    << '\n';
                                ++count;
                                return true;
                              });
      out << "total " << count << '\n';
      return 0;
    }

    if (*cmd_quotient) {
      fdag::Fdag d = fdag::read_fdag(input.stream(in_path), in_name);
      fdag::Ratio q = fdag::mining_quotient(d);
      output.stream(out_path) << q.num << '/' << q.den << '\n';
      return 0;
    }

    if (*fb_to) {
      fdag::Fdag d = fdag::read_fdag(input.stream(in_path), in_name);
      fdag::write_matrix(output.stream(out_path), fdag::to_matrix(d));
      return 0;
    }

    if (*fb_from) {
      fdag::RowFishburnMatrix m = fdag::read_matrix(input.stream(in_path), in_name);
      fdag::Fdag d = fdag::from_matrix(m);
      fdag::write_fdag(output.stream(out_path), d);
      return 0;
    }

    if (*fb_enum) {
      std::ostream& out = output.stream(out_path);
      fdag::enumerate_matrices(static_cast<std::uint64_t>(steps),
                               [&](const fdag::RowFishburnMatrix& m) {
                                 if (m.dim() > 0) {
                                   fdag::write_matrix(out, m);
                                   out << '\n';
                                 }
                                 return true;
                               });
      return 0;
    }

    if (*bench_succ) {
      std::ostream& out = output.stream(out_path);
      out << "vertices,successors\n";
      for_each_bench_fdag(bench, [&](const fdag::Fdag& d) {
        out << d.vertex_count() << ',' << fdag::expansions(d).size() << '\n';
      });
      return 0;
    }

    if (*bench_delay) {
      std::ostream& out = output.stream(out_path);
      out << "vertices,total_ns,amortized\n";
      for_each_bench_fdag(bench, [&](const fdag::Fdag& d) {
        double total = time_call_ns([&] {
          auto succ = fdag::successors(d);
          (void)succ;
        });
        double scale = static_cast<double>(d.vertex_count()) * d.outdegree();
        out << d.vertex_count() << ',' << static_cast<std::uint64_t>(total) << ','
            << total / (scale * scale) << '\n';
      });
      return 0;
    }

    if (*bench_quotient) {
      std::ostream& out = output.stream(out_path);
      out << "vertices,Q\n";
      for_each_bench_fdag(bench, [&](const fdag::Fdag& d) {
        std::uint64_t denominator = 0;
        for (int r : d.sources()) {
          auto c = fdag::count_subfdags(fdag::subdag(d, r), bench.budget - denominator);
          if (!c) {
            std::cerr << "skipping a host with " << d.vertex_count()
                      << " vertices: state budget exceeded\n";
            return;
          }
          denominator += *c;
        }
        auto table = fdag::origins(d);
        std::uint64_t numerator = 0;
        fdag::frequent_subfdags(d, table, d.sources().size(), {0, 1},
                                [&](const fdag::PatternState&) {
                                  ++numerator;
                                  return numerator <= bench.budget;
                                });
        if (numerator > bench.budget) {
          std::cerr << "skipping a host with " << d.vertex_count()
                    << " vertices: state budget exceeded\n";
          return;
        }
        out << d.vertex_count() << ','
            << static_cast<double>(numerator) / static_cast<double>(denominator) << '\n';
      });
      return 0;
    }

    throw UsageError("no command selected");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
