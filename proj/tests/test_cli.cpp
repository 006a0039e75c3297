// End-to-end checks against the built binary: generation, alignment,
// evaluation, determinism, and exit codes.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAILED: " << what << "\n";
  }
}

struct RunOutput {
  int status = -1;
  std::string out;
};

RunOutput run(const std::string& cmd) {
  RunOutput r;
  std::string full = cmd + " 2>/dev/null";
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

} // namespace

int main() {
  const std::string bin = RDFALIGN_BIN;
  fs::path dir = fs::temp_directory_path() / "rdfalign_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto at = [&](const std::string& name) { return (dir / name).string(); };

  // generate: fixed seed twice gives identical bytes
  write(at("gen.cfg"),
        "tables = 1\nrows = 12\nattrs = 2\nblank_prob = 0.4\nedit_rate = 0.1\n"
        "delete_rate = 0.1\ninsert_rate = 0.1\nseed = 5\n");
  expect(run(bin + " generate --spec " + at("gen.cfg") + " --out-prefix " + at("a")).status == 0,
         "generate runs");
  expect(run(bin + " generate --spec " + at("gen.cfg") + " --out-prefix " + at("b")).status == 0,
         "generate runs twice");
  expect(slurp(at("a1.nt")) == slurp(at("b1.nt")), "seeded generation is byte-identical (v1)");
  expect(slurp(at("a2.nt")) == slurp(at("b2.nt")), "seeded generation is byte-identical (v2)");
  expect(slurp(at("atruth.tsv")) == slurp(at("btruth.tsv")), "seeded truth is byte-identical");

  // validate and stats on generated output
  expect(run(bin + " validate " + at("a1.nt")).status == 0, "generated graph validates");
  RunOutput st = run(bin + " stats " + at("a1.nt"));
  expect(st.status == 0 && st.out.find("\"edges\"") != std::string::npos, "stats prints counts");

  // self-alignment with deblanking covers everything
  RunOutput self = run(bin + " align " + at("a1.nt") + " " + at("a1.nt") +
                       " --method deblank --stats " + at("self_stats.json"));
  expect(self.status == 0, "self-alignment runs");
  expect(slurp(at("self_stats.json")).find("\"alignedEdgeRatio\": 1.0") != std::string::npos,
         "deblank self-alignment ratio is 1.0");

  // the evolved pair aligns the renamed URI under hybrid
  write(at("v1.nt"), R"(_:b1 <ex:q> <ex:u> .
_:b1 <ex:r> "b" .
<ex:u> <ex:p> _:b2 .
<ex:u> <ex:q> "a" .
<ex:u> <ex:q> "b" .
<ex:u> <ex:r> <ex:w> .
_:b2 <ex:q> "a" .
_:b3 <ex:q> "a" .
<ex:w> <ex:p> _:b1 .
<ex:w> <ex:p> _:b3 .
)");
  write(at("v2.nt"), R"(_:b5 <ex:q> <ex:v> .
_:b5 <ex:r> "b" .
<ex:v> <ex:p> _:b4 .
<ex:v> <ex:q> "a" .
<ex:v> <ex:q> "b" .
<ex:v> <ex:r> <ex:w> .
_:b4 <ex:q> "a" .
<ex:w> <ex:p> _:b4 .
<ex:w> <ex:p> _:b5 .
)");
  RunOutput hybrid = run(bin + " align " + at("v1.nt") + " " + at("v2.nt") + " --method hybrid");
  expect(hybrid.status == 0, "hybrid align runs");
  expect(hybrid.out.find("U:ex:u\tU:ex:v\t0") != std::string::npos,
         "hybrid aligns the renamed URI");

  // determinism across runs and thread counts
  RunOutput o1 = run(bin + " align " + at("a1.nt") + " " + at("a2.nt") +
                     " --method overlap --theta 0.65 --threads 1");
  RunOutput o2 = run(bin + " align " + at("a1.nt") + " " + at("a2.nt") +
                     " --method overlap --theta 0.65 --threads 4");
  expect(o1.status == 0 && o2.status == 0, "overlap align runs");
  expect(o1.out == o2.out, "alignment output is thread-count independent");

  // JSON output carries literal text
  RunOutput js = run(bin + " align " + at("a1.nt") + " " + at("a2.nt") +
                     " --method trivial --format json");
  expect(js.status == 0 && js.out.find("\"srcText\"") != std::string::npos,
         "json output includes literal text");

  // eval produces the four categories
  RunOutput ev = run(bin + " eval " + at("a1.nt") + " " + at("a2.nt") + " --truth " +
                     at("atruth.tsv") + " --method hybrid");
  expect(ev.status == 0, "eval runs");
  for (const char* field : {"\"exact\"", "\"inclusive\"", "\"missing\"", "\"false\""})
    expect(ev.out.find(field) != std::string::npos, std::string("eval reports ") + field);

  // sweep mode emits one entry per theta
  RunOutput sw = run(bin + " eval " + at("a1.nt") + " " + at("a2.nt") + " --truth " +
                     at("atruth.tsv") + " --theta-sweep 0.45:0.85:0.2");
  expect(sw.status == 0 && sw.out.find("\"bestTheta\"") != std::string::npos, "sweep runs");

  // exit codes: parse failure 2, config error 3, budget 4
  write(at("broken.nt"), "<u:s> <u:p> junk .\n");
  expect(run(bin + " align " + at("broken.nt") + " " + at("v2.nt")).status == 2,
         "parse failure exits 2");
  expect(run(bin + " align " + at("v1.nt") + " " + at("v2.nt") + " --method nope").status == 3,
         "unknown method exits 3");
  expect(run(bin + " align " + at("v1.nt") + " " + at("v2.nt") + " --theta 1.5").status == 3,
         "bad theta exits 3");
  expect(run(bin + " align " + at("a1.nt") + " " + at("a2.nt") +
             " --method edit-oracle --cell-budget 10")
                 .status == 4,
         "oracle budget exits 4");

  // gzip input is accepted
  expect(run("gzip -c " + at("v1.nt") + " > " + at("v1.nt.gz")).status == 0, "gzip");
  RunOutput gz = run(bin + " align " + at("v1.nt.gz") + " " + at("v2.nt") + " --method trivial");
  expect(gz.status == 0 && gz.out.find("U:ex:w\tU:ex:w") != std::string::npos,
         "gzipped input parses");

  if (failures == 0) {
    std::cout << "cli smoke: all checks passed\n";
    fs::remove_all(dir);
    return 0;
  }
  std::cerr << "cli smoke: " << failures << " check(s) failed (artifacts in " << dir << ")\n";
  return 1;
}
