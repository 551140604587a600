#pragma once

// Bulk verification scans: a worker pool over independent n, one JSONL
// record per n in range (ok / fail / skip), a single serialized writer,
// and an atomically updated checkpoint sidecar so interrupted scans can
// resume without re-emitting completed work. Records may interleave out
// of order; consumers key on n.

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qcyclo/theorem.hpp"

namespace qcyclo {

using Json = nlohmann::ordered_json;

enum class ScanKind { theorem, aac, congruences };

inline std::string to_string(ScanKind k) {
  switch (k) {
    case ScanKind::theorem: return "theorem";
    case ScanKind::aac: return "aac";
    default: return "congruences";
  }
}

inline ScanKind scan_kind_from_string(const std::string& s) {
  if (s == "theorem") return ScanKind::theorem;
  if (s == "aac") return ScanKind::aac;
  if (s == "congruences") return ScanKind::congruences;
  throw input_error("unknown scan kind: " + s);
}

inline Json report_to_json(const VerificationReport& r, const std::string& kind) {
  Json j;
  j["n"] = r.n;
  j["kind"] = kind;
  j["status"] = r.ok() ? "ok" : "fail";
  j["h_imag"] = r.h_minus;
  j["h_real"] = r.h_plus;
  j["unit"] = Json{{"u", r.unit.a().get_str()},
                   {"v", r.unit.b().get_str()},
                   {"den", r.unit.den()}};
  j["a"] = r.a.get_str();
  j["b"] = r.b.get_str();
  j["alpha"] = r.alpha;
  if (r.prime_case) j["beta"] = r.beta;
  j["delta"] = r.delta;
  j["lambda"] = r.lambda;
  Json checks = Json::object();
  for (const CheckEntry& c : r.checks) checks[c.name] = c.pass;
  j["checks"] = checks;
  if (!std::isnan(r.residual_log2)) j["residual_log2"] = r.residual_log2;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline Json skip_record(long n, const std::string& kind) {
  Json j;
  j["n"] = n;
  j["kind"] = kind;
  j["status"] = "skip";
  j["checks"] = Json::object();
  j["elapsed_ms"] = 0;
  return j;
}

// Progress of one scan: everything at or below `contiguous` is done, plus
// the out-of-order completions listed in `exceptions`.
struct ScanCheckpoint {
  std::string kind;
  long min = 0, max = 0;
  long contiguous = 0;  // all n in [min, contiguous] completed
  std::vector<long> exceptions;
  std::string out;
  long records = 0;
  long failures = 0;

  bool completed(long n) const {
    if (n <= contiguous) return true;
    return std::find(exceptions.begin(), exceptions.end(), n) != exceptions.end();
  }

  Json to_json() const {
    return Json{{"kind", kind},     {"min", min},
                {"max", max},       {"contiguous", contiguous},
                {"exceptions", exceptions}, {"out", out},
                {"records", records}, {"failures", failures}};
  }
  static ScanCheckpoint from_json(const Json& j) {
    ScanCheckpoint c;
    c.kind = j.at("kind").get<std::string>();
    c.min = j.at("min").get<long>();
    c.max = j.at("max").get<long>();
    c.contiguous = j.at("contiguous").get<long>();
    c.exceptions = j.at("exceptions").get<std::vector<long>>();
    c.out = j.at("out").get<std::string>();
    c.records = j.at("records").get<long>();
    c.failures = j.at("failures").get<long>();
    return c;
  }

  // write-temp-then-rename so a crash never leaves a torn checkpoint
  void save(const std::string& path) const {
    std::string tmp = path + ".tmp";
    {
      std::ofstream f(tmp, std::ios::trunc);
      if (!f) throw std::runtime_error("cannot write checkpoint: " + tmp);
      f << to_json().dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
  }
  static std::optional<ScanCheckpoint> load(const std::string& path) {
    std::ifstream f(path);
    if (!f) return std::nullopt;
    Json j = Json::parse(f, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    return from_json(j);
  }
};

struct ScanOptions {
  ScanKind kind = ScanKind::theorem;
  long min = 0, max = 0;
  unsigned jobs = 0;  // 0 = available parallelism
  std::string out_path;  // empty = stdout, no checkpointing
  bool resume = false;
  long precision_bits = 0;
};

struct ScanSummary {
  long records = 0;
  long failures = 0;
  long skipped = 0;
  int exit_code() const { return failures > 0 ? 1 : 0; }
};

inline void parallel_for_each(const std::vector<long>& items, unsigned jobs,
                              const std::function<void(long)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, items.empty() ? 1 : static_cast<unsigned>(items.size()));
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::string first_error;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        fn(items[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (first_error.empty()) first_error = e.what();
      }
    }
  };
  if (jobs <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (!first_error.empty()) throw std::runtime_error(first_error);
}

namespace detail {

inline Json scan_record(ScanKind kind, long n, long precision_bits) {
  const std::string kind_name = to_string(kind);
  switch (kind) {
    case ScanKind::theorem: {
      if (n <= 3 || n % 4 != 3 || !is_squarefree(static_cast<std::uint64_t>(n)))
        return skip_record(n, kind_name);
      VerifyOptions opt;
      opt.precision_bits = precision_bits;
      return report_to_json(verify_n(n, opt), kind_name);
    }
    case ScanKind::aac: {
      if (n <= 3 || n % 4 != 3 || !is_prime(static_cast<std::uint64_t>(n)))
        return skip_record(n, kind_name);
      StopWatch sw;
      AacResult r = aac_check(n);
      Json j;
      j["n"] = n;
      j["kind"] = kind_name;
      bool ok = r.consistent && !r.b_divisible && !r.v_divisible;
      j["status"] = ok ? "ok" : "fail";
      j["h_real"] = r.h;
      j["unit"] = Json{{"u", r.unit.a().get_str()},
                       {"v", r.unit.b().get_str()},
                       {"den", r.unit.den()}};
      j["a"] = r.a.get_str();
      j["b"] = r.b.get_str();
      j["checks"] = Json{{"b_indivisible", !r.b_divisible},
                         {"v_indivisible", !r.v_divisible},
                         {"consistent", r.consistent}};
      j["elapsed_ms"] = sw.ms();
      return j;
    }
    default: {
      bool prime = n >= 2 && is_prime(static_cast<std::uint64_t>(n));
      if (!prime || n <= 3 || n % 2 == 0) return skip_record(n, kind_name);
      StopWatch sw;
      Json j;
      j["n"] = n;
      j["kind"] = kind_name;
      if (n % 4 == 3) {
        bool ok = mordell_congruence(n);
        j["status"] = ok ? "ok" : "fail";
        j["h_imag"] = h_imag(n);
        j["checks"] = Json{{"mordell", ok}};
      } else {
        bool ok = chowla_congruence(n);
        j["status"] = ok ? "ok" : "fail";
        j["checks"] = Json{{"chowla", ok}};
      }
      j["elapsed_ms"] = sw.ms();
      return j;
    }
  }
}

}  // namespace detail

/// Runs one scan to completion (or resumes one), streaming JSONL records.
/// Returns the cumulative summary including failures recorded by earlier
/// runs of the same scan.
inline ScanSummary run_scan(const ScanOptions& opt) {
  if (opt.min > opt.max) throw input_error("scan: min must not exceed max");
  const bool file_backed = !opt.out_path.empty();
  if (opt.resume && !file_backed) throw input_error("scan: --resume requires --out");

  ScanCheckpoint ckpt;
  ckpt.kind = to_string(opt.kind);
  ckpt.min = opt.min;
  ckpt.max = opt.max;
  ckpt.contiguous = opt.min - 1;
  ckpt.out = opt.out_path;
  std::string ckpt_path = file_backed ? opt.out_path + ".ckpt" : "";

  if (opt.resume) {
    auto prior = ScanCheckpoint::load(ckpt_path);
    if (!prior) throw input_error("scan: no checkpoint to resume at " + ckpt_path);
    if (prior->kind != ckpt.kind || prior->min != opt.min || prior->max != opt.max ||
        prior->out != opt.out_path)
      throw input_error("scan: checkpoint does not match the requested scan");
    ckpt = *prior;
  }

  std::ofstream file;
  if (file_backed) {
    file.open(opt.out_path, opt.resume ? std::ios::app : std::ios::trunc);
    if (!file) throw input_error("scan: cannot open output path " + opt.out_path);
  }
  std::ostream& out = file_backed ? static_cast<std::ostream&>(file) : std::cout;

  std::vector<long> todo;
  for (long n = opt.min; n <= opt.max; ++n)
    if (!opt.resume || !ckpt.completed(n)) todo.push_back(n);

  ScanSummary summary;
  summary.records = ckpt.records;
  summary.failures = ckpt.failures;

  std::mutex write_mutex;
  std::set<long> pending;  // done but above the contiguous frontier
  long since_save = 0;
  auto write_record = [&](long n, const Json& record) {
    std::lock_guard<std::mutex> lock(write_mutex);
    out << record.dump() << '\n';
    ++summary.records;
    ++ckpt.records;
    std::string status = record.at("status").get<std::string>();
    if (status == "fail") {
      ++summary.failures;
      ++ckpt.failures;
    } else if (status == "skip") {
      ++summary.skipped;
    }
    pending.insert(n);
    while (pending.count(ckpt.contiguous + 1)) {
      pending.erase(++ckpt.contiguous);
    }
    ckpt.exceptions.assign(pending.begin(), pending.end());
    if (file_backed && (++since_save >= 64 || ckpt.records == (opt.max - opt.min + 1))) {
      out.flush();
      ckpt.save(ckpt_path);
      since_save = 0;
    }
  };

  parallel_for_each(todo, opt.jobs, [&](long n) {
    write_record(n, detail::scan_record(opt.kind, n, opt.precision_bits));
  });

  if (file_backed) {
    out.flush();
    ckpt.save(ckpt_path);
  }
  return summary;
}

}  // namespace qcyclo
