#include "gentle/gentle.h"

#include "dot.hpp"
#include "jsonio.hpp"
#include "suite.hpp"
#include <cstring>
#include <sstream>

using namespace gentle;

struct gentle_ctx {
    Field field;
    std::optional<ValidatedDatum> datum;
    std::optional<AlgebraContext> actx;
    uint64_t seed = 0;
    bool pretty = false;
};

struct gentle_complex {
    ProjComplex X;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

gentle_status fail(gentle_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

template <typename F>
gentle_status guarded(F&& body) {
    try {
        return body();
    } catch (const domain_error& e) {
        return fail(GENTLE_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(GENTLE_ERR_INTERNAL, e.what());
    }
}

std::string render(const gentle_ctx* ctx, json j) {
    j["seed"] = ctx ? ctx->seed : 0;
    return ctx && ctx->pretty ? j.dump(2) : j.dump();
}

std::string render_free(uint64_t seed, bool pretty, json j) {
    j["seed"] = seed;
    return pretty ? j.dump(2) : j.dump();
}

gentle_status need(const void* p, const char* what) {
    if (p) return GENTLE_OK;
    return fail(GENTLE_ERR_USAGE, std::string("null ") + what);
}

} // namespace

extern "C" {

gentle_status gentle_ctx_new(const char* field_spec, const char* datum_json, uint64_t seed,
                             int pretty, gentle_ctx** out) {
    if (need(out, "output pointer")) return GENTLE_ERR_USAGE;
    *out = nullptr;
    return guarded([&] {
        auto ctx = std::make_unique<gentle_ctx>();
        ctx->field = Field::parse(field_spec ? field_spec : "Q");
        ctx->seed = seed;
        ctx->pretty = pretty != 0;
        if (datum_json) {
            json j = json::parse(datum_json, nullptr, false);
            if (j.is_discarded()) return fail(GENTLE_ERR_DOMAIN, "datum is not valid JSON");
            ctx->datum = ValidatedDatum::validate(datum_from_json(j));
            ctx->actx = build_datum_context(ctx->field, *ctx->datum);
        }
        *out = ctx.release();
        return GENTLE_OK;
    });
}

void gentle_ctx_free(gentle_ctx* ctx) { delete ctx; }

const char* gentle_last_error(void) { return g_last_error.c_str(); }

void gentle_string_free(char* s) { std::free(s); }

gentle_status gentle_datum_validate(const char* datum_json, uint64_t seed, int pretty,
                                    char** out_json) {
    if (need(out_json, "output pointer") || need(datum_json, "datum")) return GENTLE_ERR_USAGE;
    return guarded([&] {
        json j = json::parse(datum_json, nullptr, false);
        if (j.is_discarded()) return fail(GENTLE_ERR_DOMAIN, "datum is not valid JSON");
        ValidatedDatum d = ValidatedDatum::validate(datum_from_json(j));
        json out;
        out["valid"] = true;
        out["gentle"] = d.is_gentle();
        out["normalized"] = datum_to_json(d.raw());
        *out_json = dup_string(render_free(seed, pretty != 0, std::move(out)));
        return GENTLE_OK;
    });
}

namespace {
gentle_status need_datum(gentle_ctx* ctx) {
    if (!ctx) return fail(GENTLE_ERR_USAGE, "null context");
    if (!ctx->actx) return fail(GENTLE_ERR_DOMAIN, "context has no datum");
    return GENTLE_OK;
}
} // namespace

gentle_status gentle_datum_sets(gentle_ctx* ctx, char** out_json) {
    if (need(out_json, "output pointer")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        *out_json = dup_string(render(ctx, index_sets_to_json(*ctx->datum)));
        return GENTLE_OK;
    });
}

gentle_status gentle_datum_cycles(gentle_ctx* ctx, char** out_json) {
    if (need(out_json, "output pointer")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        *out_json = dup_string(render(ctx, special_cycles_to_json(*ctx->datum)));
        return GENTLE_OK;
    });
}

gentle_status gentle_algebra_info(gentle_ctx* ctx, char** out_json) {
    if (need(out_json, "output pointer")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        *out_json = dup_string(render(ctx, algebra_info_to_json(*ctx->actx)));
        return GENTLE_OK;
    });
}

gentle_status gentle_quiver_dot(gentle_ctx* ctx, char** out_dot) {
    if (need(out_dot, "output pointer")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        std::string dot = "// seed: " + std::to_string(ctx->seed) + "\n" + quiver_dot(*ctx->actx);
        *out_dot = dup_string(dot);
        return GENTLE_OK;
    });
}

namespace {
AnyWord parse_word(gentle_ctx* ctx, const char* word_json) {
    json j = json::parse(word_json, nullptr, false);
    if (j.is_discarded()) throw domain_error("word is not valid JSON");
    return word_from_json(ctx->field, j);
}
} // namespace

gentle_status gentle_word_check(gentle_ctx* ctx, const char* word_json, char** out_json) {
    if (need(out_json, "output pointer") || need(word_json, "word")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        AnyWord w = parse_word(ctx, word_json);
        json out;
        if (w.band) {
            validate_band(*ctx->datum, w.bnd);
            out["valid"] = true;
            out["kind"] = "band";
        } else {
            StringType t = validate_string(*ctx->datum, w.str);
            out["valid"] = true;
            out["kind"] = "string";
            out["type"] = t == StringType::BothUntied    ? "both-untied"
                          : t == StringType::LeftStalk   ? "left-stalk"
                          : t == StringType::RightStalk  ? "right-stalk"
                                                         : "both-stalk";
        }
        *out_json = dup_string(render(ctx, std::move(out)));
        return GENTLE_OK;
    });
}

gentle_status gentle_word_build(gentle_ctx* ctx, const char* word_json, gentle_complex** out) {
    if (need(out, "output pointer") || need(word_json, "word")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    *out = nullptr;
    return guarded([&] {
        AnyWord w = parse_word(ctx, word_json);
        ProjComplex X = w.band ? band_complex(*ctx->actx, w.bnd)
                               : string_complex(*ctx->actx, w.str);
        *out = new gentle_complex{std::move(X)};
        return GENTLE_OK;
    });
}

gentle_status gentle_word_equiv(gentle_ctx* ctx, const char* word_a, const char* word_b,
                                char** out_json) {
    if (need(out_json, "output pointer") || need(word_a, "word") || need(word_b, "word"))
        return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        AnyWord a = parse_word(ctx, word_a), b = parse_word(ctx, word_b);
        bool eq;
        if (a.band != b.band) eq = false;
        else if (a.band) {
            validate_band(*ctx->datum, a.bnd);
            validate_band(*ctx->datum, b.bnd);
            eq = band_equivalent(ctx->field, *ctx->datum, a.bnd, b.bnd);
        } else {
            validate_string(*ctx->datum, a.str);
            validate_string(*ctx->datum, b.str);
            eq = string_equivalent(*ctx->datum, a.str, b.str);
        }
        json out;
        out["equivalent"] = eq;
        *out_json = dup_string(render(ctx, std::move(out)));
        return GENTLE_OK;
    });
}

gentle_status gentle_word_enumerate(gentle_ctx* ctx, int max_segments, int window_lo,
                                    int window_hi, int bands, char** out_json) {
    if (need(out_json, "output pointer")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        json out;
        json list = json::array();
        if (bands) {
            for (const auto& skel : enumerate_bands(*ctx->datum, max_segments)) {
                AnyWord w;
                w.band = true;
                w.bnd = {skel, 1, ctx->field.one()};
                list.push_back(word_to_json(w));
            }
            out["kind"] = "band-skeletons";
        } else {
            for (const auto& v :
                 enumerate_strings(*ctx->datum, max_segments, window_lo, window_hi)) {
                AnyWord w;
                w.str = v;
                list.push_back(word_to_json(w));
            }
            out["kind"] = "strings";
        }
        out["count"] = list.size();
        out["words"] = std::move(list);
        *out_json = dup_string(render(ctx, std::move(out)));
        return GENTLE_OK;
    });
}

gentle_status gentle_word_gluing_dot(gentle_ctx* ctx, const char* word_json, char** out_dot) {
    if (need(out_dot, "output pointer") || need(word_json, "word")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        AnyWord w = parse_word(ctx, word_json);
        GluingDiagram g = w.band ? band_gluing(*ctx->datum, w.bnd)
                                 : string_gluing(*ctx->datum, w.str);
        std::string dot =
            "// seed: " + std::to_string(ctx->seed) + "\n" + gluing_dot(*ctx->datum, g);
        *out_dot = dup_string(dot);
        return GENTLE_OK;
    });
}

gentle_status gentle_complex_parse(gentle_ctx* ctx, const char* complex_json,
                                   gentle_complex** out) {
    if (need(out, "output pointer") || need(complex_json, "complex")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    *out = nullptr;
    return guarded([&] {
        json j = json::parse(complex_json, nullptr, false);
        if (j.is_discarded()) return fail(GENTLE_ERR_DOMAIN, "complex is not valid JSON");
        *out = new gentle_complex{complex_from_json(*ctx->actx, j)};
        return GENTLE_OK;
    });
}

void gentle_complex_free(gentle_complex* X) { delete X; }

gentle_status gentle_complex_to_json(gentle_ctx* ctx, const gentle_complex* X,
                                     char** out_json) {
    if (need(out_json, "output pointer") || need(X, "complex")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        *out_json = dup_string(render(ctx, complex_to_json(*ctx->actx, X->X)));
        return GENTLE_OK;
    });
}

gentle_status gentle_complex_check(gentle_ctx* ctx, const gentle_complex* X, char** out_json) {
    if (need(out_json, "output pointer") || need(X, "complex")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        ComplexCheck c = verify_complex(X->X);
        json out;
        out["isComplex"] = c.is_complex;
        out["isMinimal"] = c.is_minimal;
        if (!c.issue.empty()) out["issue"] = c.issue;
        *out_json = dup_string(render(ctx, std::move(out)));
        return GENTLE_OK;
    });
}

gentle_status gentle_complex_cohomology(gentle_ctx* ctx, const gentle_complex* X,
                                        char** out_json) {
    if (need(out_json, "output pointer") || need(X, "complex")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        *out_json = dup_string(render(ctx, cohomology_to_json(*ctx->actx, X->X)));
        return GENTLE_OK;
    });
}

gentle_status gentle_complex_decompose(gentle_ctx* ctx, const gentle_complex* X,
                                       char** out_json) {
    if (need(out_json, "output pointer") || need(X, "complex")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        auto parts = decompose(X->X, ctx->seed);
        json out;
        out["summands"] = json::array();
        for (const auto& p : parts) out["summands"].push_back(complex_to_json(*ctx->actx, p));
        out["count"] = parts.size();
        *out_json = dup_string(render(ctx, std::move(out)));
        return GENTLE_OK;
    });
}

gentle_status gentle_complex_iso(gentle_ctx* ctx, const gentle_complex* X,
                                 const gentle_complex* Y, char** out_json) {
    if (need(out_json, "output pointer") || need(X, "complex") || need(Y, "complex"))
        return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        json out;
        out["isomorphic"] = is_homotopy_iso(X->X, Y->X, ctx->seed);
        *out_json = dup_string(render(ctx, std::move(out)));
        return GENTLE_OK;
    });
}

gentle_status gentle_bunch_show(gentle_ctx* ctx, int window_lo, int window_hi,
                                char** out_json) {
    if (need(out_json, "output pointer")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        BunchOfChains B = bunch_of_datum(*ctx->datum, window_lo, window_hi);
        *out_json = dup_string(render(ctx, bunch_to_json(B)));
        return GENTLE_OK;
    });
}

gentle_status gentle_rouquier_certify(gentle_ctx* ctx, const gentle_complex* X,
                                      char** out_json) {
    if (need(out_json, "output pointer") || need(X, "complex")) return GENTLE_ERR_USAGE;
    if (auto st = need_datum(ctx)) return st;
    return guarded([&] {
        GenerationCertificate c = generation_certificate(*ctx->actx, X->X);
        *out_json = dup_string(render(ctx, certificate_to_json(c)));
        return GENTLE_OK;
    });
}

gentle_status gentle_rouquier_fatpoint(const char* field_spec, int n, uint64_t seed, int pretty,
                                       char** out_json) {
    if (need(out_json, "output pointer")) return GENTLE_ERR_USAGE;
    return guarded([&] {
        Field F = Field::parse(field_spec ? field_spec : "Q");
        FatPointReport r = fat_point_probe(F, n);
        json out;
        out["n"] = r.n;
        out["dimA"] = r.dimA;
        out["dimH"] = r.dimH;
        out["certificate"] = r.certificate_ok;
        *out_json = dup_string(render_free(seed, pretty != 0, std::move(out)));
        return GENTLE_OK;
    });
}

gentle_status gentle_suite_run(const char* corpus, uint64_t seed, char** out_report,
                               int* failures) {
    if (need(out_report, "output pointer") || need(failures, "failure counter"))
        return GENTLE_ERR_USAGE;
    return guarded([&] {
        SuiteOptions opt;
        opt.seed = seed;
        std::string c = corpus ? corpus : "full";
        if (c == "small") opt.small_corpus = true;
        else if (c != "full") return fail(GENTLE_ERR_USAGE, "corpus must be small or full");
        std::ostringstream os;
        auto results = run_acceptance(opt, os);
        int nf = 0;
        for (const auto& r : results)
            if (!r.pass) ++nf;
        *failures = nf;
        *out_report = dup_string(os.str());
        return GENTLE_OK;
    });
}

} // extern "C"
