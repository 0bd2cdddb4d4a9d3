// Command-line front end; talks to the library exclusively through the C API.
#include <gentle/gentle.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct Options {
    std::string field = "Q";
    uint64_t seed = 20240101;
    std::string format = "json"; // json | text (text = indented json)
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "{\"error\":{\"code\":\"usage\",\"message\":\"cannot read " << path
                  << "\"}}" << std::endl;
        std::exit(2);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

[[noreturn]] void die(gentle_status st) {
    const char* code = st == GENTLE_ERR_DOMAIN ? "domain"
                       : st == GENTLE_ERR_USAGE ? "usage"
                                                : "internal";
    std::cerr << "{\"error\":{\"code\":\"" << code << "\",\"message\":\"" << gentle_last_error()
              << "\"}}" << std::endl;
    std::exit(st == GENTLE_ERR_USAGE ? 2 : 1);
}

void check(gentle_status st) {
    if (st != GENTLE_OK) die(st);
}

struct Ctx {
    gentle_ctx* ptr = nullptr;
    ~Ctx() { gentle_ctx_free(ptr); }
};

struct Complex {
    gentle_complex* ptr = nullptr;
    ~Complex() { gentle_complex_free(ptr); }
};

void print_and_free(char* s) {
    std::cout << s << std::endl;
    gentle_string_free(s);
}

gentle_ctx* make_ctx(const Options& opt, const std::string& datum_path) {
    static Ctx holder;
    std::string datum = read_file(datum_path);
    check(gentle_ctx_new(opt.field.c_str(), datum.c_str(), opt.seed,
                         opt.format == "text" ? 1 : 0, &holder.ptr));
    return holder.ptr;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gentle algebras, string/band complexes and generation certificates"};
    app.require_subcommand(1);
    app.fallthrough(); // accept the global options after subcommands too
    Options opt;
    app.add_option("--field", opt.field, "ground field: Q or Fp:<p>");
    app.add_option("--seed", opt.seed, "seed for randomized trials");
    app.add_option("--format", opt.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));

    std::string datum_path, word_path, word_path2, complex_path, complex_path2;
    int max_segments = 4, window_lo = -3, window_hi = 0, fat_n = 1;
    bool want_dot = false, want_bands = false;
    std::string window_spec, corpus = "full";

    auto parse_window = [&](const std::string& spec) {
        auto c = spec.find(':');
        if (c == std::string::npos) {
            std::cerr << "{\"error\":{\"code\":\"usage\",\"message\":\"window must be lo:hi\"}}"
                      << std::endl;
            std::exit(2);
        }
        window_lo = std::stoi(spec.substr(0, c));
        window_hi = std::stoi(spec.substr(c + 1));
    };

    // datum
    auto* datum = app.add_subcommand("datum", "validate a datum and derived sets");
    auto* d_validate = datum->add_subcommand("validate");
    d_validate->add_option("datum", datum_path)->required();
    auto* d_sets = datum->add_subcommand("sets");
    d_sets->add_option("datum", datum_path)->required();
    auto* d_cycles = datum->add_subcommand("cycles");
    d_cycles->add_option("datum", datum_path)->required();

    // algebra
    auto* algebra = app.add_subcommand("algebra", "based algebra of a datum");
    auto* a_info = algebra->add_subcommand("info");
    a_info->add_option("datum", datum_path)->required();
    a_info->add_flag("--dot", want_dot, "emit the quiver in DOT format");

    // word
    auto* word = app.add_subcommand("word", "reduced string/band words");
    auto* w_build = word->add_subcommand("build");
    w_build->add_option("datum", datum_path)->required();
    w_build->add_option("word", word_path)->required();
    w_build->add_flag("--dot", want_dot, "emit the gluing diagram instead of the complex");
    auto* w_check = word->add_subcommand("check");
    w_check->add_option("datum", datum_path)->required();
    w_check->add_option("word", word_path)->required();
    auto* w_equiv = word->add_subcommand("equiv");
    w_equiv->add_option("datum", datum_path)->required();
    w_equiv->add_option("word1", word_path)->required();
    w_equiv->add_option("word2", word_path2)->required();
    auto* w_enum = word->add_subcommand("enumerate");
    w_enum->add_option("datum", datum_path)->required();
    w_enum->add_option("--max-segments", max_segments);
    w_enum->add_option("--window", window_spec, "degree window lo:hi");
    w_enum->add_flag("--bands", want_bands, "enumerate band skeletons instead of strings");

    // complex
    auto* cplx = app.add_subcommand("complex", "complexes of projectives");
    auto* c_check = cplx->add_subcommand("check");
    c_check->add_option("datum", datum_path)->required();
    c_check->add_option("complex", complex_path)->required();
    auto* c_coh = cplx->add_subcommand("cohomology");
    c_coh->add_option("datum", datum_path)->required();
    c_coh->add_option("complex", complex_path)->required();
    auto* c_dec = cplx->add_subcommand("decompose");
    c_dec->add_option("datum", datum_path)->required();
    c_dec->add_option("complex", complex_path)->required();
    auto* c_iso = cplx->add_subcommand("iso");
    c_iso->add_option("datum", datum_path)->required();
    c_iso->add_option("complex1", complex_path)->required();
    c_iso->add_option("complex2", complex_path2)->required();

    // bunch
    auto* bunch = app.add_subcommand("bunch", "the bunch of chains of a datum");
    auto* b_show = bunch->add_subcommand("show");
    b_show->add_option("datum", datum_path)->required();
    b_show->add_option("--window", window_spec, "degree window lo:hi");

    // rouquier
    auto* rq = app.add_subcommand("rouquier", "generation certificates");
    auto* r_cert = rq->add_subcommand("certify");
    r_cert->add_option("datum", datum_path)->required();
    r_cert->add_option("complex", complex_path)->required();
    auto* r_fat = rq->add_subcommand("fatpoint");
    r_fat->add_option("n", fat_n)->required();

    // suite
    auto* suite = app.add_subcommand("suite", "acceptance suite");
    auto* s_run = suite->add_subcommand("run");
    s_run->add_option("--corpus", corpus, "small or full")
        ->check(CLI::IsMember({"small", "full"}));

    CLI11_PARSE(app, argc, argv);

    if (const char* env = std::getenv("GENTLE_FIELD")) opt.field = env;

    char* out = nullptr;
    if (d_validate->parsed()) {
        check(gentle_datum_validate(read_file(datum_path).c_str(), opt.seed,
                                    opt.format == "text" ? 1 : 0, &out));
        print_and_free(out);
    } else if (d_sets->parsed()) {
        check(gentle_datum_sets(make_ctx(opt, datum_path), &out));
        print_and_free(out);
    } else if (d_cycles->parsed()) {
        check(gentle_datum_cycles(make_ctx(opt, datum_path), &out));
        print_and_free(out);
    } else if (a_info->parsed()) {
        gentle_ctx* ctx = make_ctx(opt, datum_path);
        check(want_dot ? gentle_quiver_dot(ctx, &out) : gentle_algebra_info(ctx, &out));
        print_and_free(out);
    } else if (w_build->parsed()) {
        gentle_ctx* ctx = make_ctx(opt, datum_path);
        std::string wjson = read_file(word_path);
        if (want_dot) {
            check(gentle_word_gluing_dot(ctx, wjson.c_str(), &out));
        } else {
            Complex X;
            check(gentle_word_build(ctx, wjson.c_str(), &X.ptr));
            check(gentle_complex_to_json(ctx, X.ptr, &out));
        }
        print_and_free(out);
    } else if (w_check->parsed()) {
        check(gentle_word_check(make_ctx(opt, datum_path), read_file(word_path).c_str(), &out));
        print_and_free(out);
    } else if (w_equiv->parsed()) {
        check(gentle_word_equiv(make_ctx(opt, datum_path), read_file(word_path).c_str(),
                                read_file(word_path2).c_str(), &out));
        print_and_free(out);
    } else if (w_enum->parsed()) {
        if (!window_spec.empty()) parse_window(window_spec);
        check(gentle_word_enumerate(make_ctx(opt, datum_path), max_segments, window_lo,
                                    window_hi, want_bands ? 1 : 0, &out));
        print_and_free(out);
    } else if (c_check->parsed() || c_coh->parsed() || c_dec->parsed()) {
        gentle_ctx* ctx = make_ctx(opt, datum_path);
        Complex X;
        check(gentle_complex_parse(ctx, read_file(complex_path).c_str(), &X.ptr));
        if (c_check->parsed()) check(gentle_complex_check(ctx, X.ptr, &out));
        else if (c_coh->parsed()) check(gentle_complex_cohomology(ctx, X.ptr, &out));
        else check(gentle_complex_decompose(ctx, X.ptr, &out));
        print_and_free(out);
    } else if (c_iso->parsed()) {
        gentle_ctx* ctx = make_ctx(opt, datum_path);
        Complex X, Y;
        check(gentle_complex_parse(ctx, read_file(complex_path).c_str(), &X.ptr));
        check(gentle_complex_parse(ctx, read_file(complex_path2).c_str(), &Y.ptr));
        check(gentle_complex_iso(ctx, X.ptr, Y.ptr, &out));
        print_and_free(out);
    } else if (b_show->parsed()) {
        if (!window_spec.empty()) parse_window(window_spec);
        check(gentle_bunch_show(make_ctx(opt, datum_path), window_lo, window_hi, &out));
        print_and_free(out);
    } else if (r_cert->parsed()) {
        gentle_ctx* ctx = make_ctx(opt, datum_path);
        Complex X;
        check(gentle_complex_parse(ctx, read_file(complex_path).c_str(), &X.ptr));
        check(gentle_rouquier_certify(ctx, X.ptr, &out));
        print_and_free(out);
    } else if (r_fat->parsed()) {
        check(gentle_rouquier_fatpoint(opt.field.c_str(), fat_n, opt.seed,
                                       opt.format == "text" ? 1 : 0, &out));
        print_and_free(out);
    } else if (s_run->parsed()) {
        int failures = 0;
        check(gentle_suite_run(corpus.c_str(), opt.seed, &out, &failures));
        std::cout << out;
        gentle_string_free(out);
        if (failures != 0) {
            std::cout << "FAILURES: " << failures << std::endl;
            return 1;
        }
        std::cout << "ALL CRITERIA PASSED" << std::endl;
    }
    return 0;
}
