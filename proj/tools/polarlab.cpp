// Command-line workbench: code construction, coset analysis, weight-spectrum
// enumeration, single-codeword decoding and AWGN BLER sweeps.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polarlab/channel.hpp"
#include "polarlab/crc.hpp"
#include "polarlab/decode.hpp"
#include "polarlab/precode.hpp"
#include "polarlab/profile.hpp"
#include "polarlab/sim.hpp"
#include "polarlab/spectrum.hpp"
#include "polarlab/structure.hpp"

using namespace polarlab;

namespace {

struct SchemeFlags {
    std::string scheme = "polar";
    std::string poly;   // comma-separated, p_0 first
    std::string preset; // pac10 | rpac10 | rpac7
    bool crc = false;   // crc11 preset

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--scheme", scheme, "polar|pac|rpac|crc_polar")
            ->check(CLI::IsMember({"polar", "pac", "rpac", "crc_polar"}));
        cmd->add_option("--poly", poly, "precoder polynomial, comma-separated bits, p_0 first");
        cmd->add_option("--preset", preset, "named polynomial preset")
            ->check(CLI::IsMember({"pac10", "rpac10", "rpac7"}));
    }

    std::vector<std::uint8_t> polynomial() const
    {
        if (!poly.empty())
            return parse_poly(poly);
        if (preset == "pac10" || preset == "rpac10")
            return poly_pac10();
        if (preset == "rpac7")
            return poly_rpac7();
        throw ConfigError("scheme '" + scheme + "' needs --poly or --preset");
    }

    PrecoderSpec precoder(const CodeProfile& profile) const
    {
        if (scheme == "pac")
            return PrecoderSpec::forward(polynomial());
        if (scheme == "rpac")
            return PrecoderSpec::reverse(polynomial(), profile);
        return PrecoderSpec::identity();
    }

    Scheme parsed() const
    {
        if (scheme == "polar") return Scheme::polar;
        if (scheme == "pac") return Scheme::pac;
        if (scheme == "rpac") return Scheme::rpac;
        return Scheme::crc_polar;
    }
};

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw ParseError("cannot open '" + path + "' for writing");
    return f;
}

// CRC-polar occupies K + 11 channels; everything else uses the profile as-is.
CodeProfile effective_profile(const CodeProfile& base, const SchemeFlags& flags)
{
    if (flags.scheme == "crc_polar")
        return crc_extended_profile(base, CrcSpec::crc11());
    return base;
}

std::string config_comment(const CLI::App& cmd)
{
    std::ostringstream os;
    os << "# polarlab " << cmd.get_name();
    for (const auto* opt : cmd.get_options())
        if (opt->count() && !opt->get_name().empty())
            os << ' ' << opt->get_name() << '=' << opt->as<std::string>();
    os << "\n";
    return os.str();
}

int cmd_construct(const std::string& out, int n, int k, double snr, const std::string& info_list)
{
    CodeProfile p;
    if (!info_list.empty()) {
        std::vector<int> set;
        std::istringstream is(info_list);
        std::string tok;
        while (std::getline(is, tok, ','))
            set.push_back(std::stoi(tok));
        p = make_external_profile(n, std::move(set));
    } else {
        p = construct_profile(n, k, snr);
    }
    auto f = open_out(out);
    save_profile(p, f);
    std::cout << "wrote profile N=" << p.N << " K=" << p.K << " to " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"polar / PAC / RPAC coding workbench"};
    app.require_subcommand(1);
    app.set_config("--config", "", "experiment recipe file mirroring the CLI flags");

    // construct
    auto* construct = app.add_subcommand("construct", "build a code profile and write it to a file");
    int c_n = 64, c_k = 32;
    double c_snr = 4.0;
    std::string c_out, c_info;
    construct->add_option("--n", c_n, "block length (power of two)")->required();
    construct->add_option("--k", c_k, "information length")->required();
    construct->add_option("--design-snr", c_snr, "design Eb/N0 in dB for the GA construction");
    construct->add_option("--info-set", c_info, "explicit info set (comma-separated), bypasses GA");
    construct->add_option("--profile-out", c_out, "output profile file")->required();

    // cosets
    auto* cosets = app.add_subcommand("cosets", "per-coset K_i size and Lemma-style class");
    std::string s_profile, s_out;
    cosets->add_option("--profile", s_profile, "profile file")->required();
    cosets->add_option("--out", s_out, "output file (default stdout)");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "minimum-weight codeword enumeration");
    SchemeFlags sp_flags;
    std::string sp_profile, sp_out, sp_method = "support";
    int sp_wcap = 4;
    double sp_budget = 1e8;
    spectrum->add_option("--profile", sp_profile, "profile file")->required();
    sp_flags.attach(spectrum);
    spectrum->add_option("--method", sp_method, "support|message|formula")
        ->check(CLI::IsMember({"support", "message", "formula"}));
    spectrum->add_option("--wcap", sp_wcap, "weight cap for the support method");
    spectrum->add_option("--budget", sp_budget, "pattern budget guard rail");
    spectrum->add_option("--out", sp_out, "CSV output file (default stdout)");

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "decode one codeword from a file");
    SchemeFlags de_flags;
    std::string de_profile, de_input, de_format = "bits", de_metric = "exact";
    int de_list = 8;
    double de_llr_mag = 4.0;
    decode_cmd->add_option("--profile", de_profile, "profile file")->required();
    de_flags.attach(decode_cmd);
    decode_cmd->add_option("--list-size", de_list, "list size L");
    decode_cmd->add_option("--metric", de_metric, "exact|approx")
        ->check(CLI::IsMember({"exact", "approx"}));
    decode_cmd->add_option("--input", de_input, "input file")->required();
    decode_cmd->add_option("--format", de_format, "bits|hex|llr")
        ->check(CLI::IsMember({"bits", "hex", "llr"}));
    decode_cmd->add_option("--llr-mag", de_llr_mag, "LLR magnitude for hard inputs");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "AWGN Monte Carlo BLER sweep");
    SchemeFlags si_flags;
    std::string si_profile, si_out, si_metric = "exact", si_snrs;
    int si_list = 8;
    std::uint64_t si_min_errors = 100, si_max_frames = 1000000, si_seed = 1;
    double si_bound_awmin = -1.0;
    int si_bound_wmin = 0;
    bool si_bound_formula = false;
    simulate->add_option("--profile", si_profile, "profile file")->required();
    si_flags.attach(simulate);
    simulate->add_option("--list-size", si_list, "list size L");
    simulate->add_option("--metric", si_metric, "exact|approx")
        ->check(CLI::IsMember({"exact", "approx"}));
    simulate->add_option("--snr", si_snrs, "Eb/N0 list in dB, comma-separated (may be empty)");
    simulate->add_option("--min-errors", si_min_errors, "stop after this many block errors");
    simulate->add_option("--max-frames", si_max_frames, "hard frame cap per point");
    simulate->add_option("--seed", si_seed, "base seed");
    simulate->add_option("--bound-awmin", si_bound_awmin, "error coefficient for the bound column");
    simulate->add_option("--bound-wmin", si_bound_wmin, "minimum weight for the bound column");
    simulate->add_flag("--bound-formula", si_bound_formula,
                       "derive the bound from the closed-form polar coefficient");
    simulate->add_option("--out", si_out, "CSV output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return cmd_construct(c_out, c_n, c_k, c_snr, c_info);

        if (cosets->parsed()) {
            CodeProfile p = load_profile(s_profile);
            if (s_out.empty())
                write_coset_report(p, std::cout);
            else {
                auto f = open_out(s_out);
                f << config_comment(*cosets);
                write_coset_report(p, f);
            }
            return 0;
        }

        if (spectrum->parsed()) {
            CodeProfile base = load_profile(sp_profile);
            CodeProfile prof = effective_profile(base, sp_flags);
            PrecoderSpec spec = sp_flags.precoder(prof);
            std::optional<CrcSpec> crc;
            if (sp_flags.scheme == "crc_polar")
                crc = CrcSpec::crc11();

            SpectrumReport rep;
            if (sp_method == "formula") {
                auto s = polar_Awmin_formula(prof);
                rep.scheme = sp_flags.scheme;
                rep.method = "formula";
                rep.wmin_observed = s.wmin;
                rep.A_wmin = s.A_wmin;
            } else if (sp_method == "message") {
                rep = enumerate_by_message(prof, spec, crc);
            } else {
                rep = enumerate_by_support(prof, spec, sp_wcap, crc, sp_budget);
            }
            if (sp_out.empty()) {
                write_spectrum_text(rep, std::cout);
            } else {
                auto f = open_out(sp_out);
                f << config_comment(*spectrum);
                write_spectrum_csv(rep, f);
            }
            std::cout << "scheme " << rep.scheme << " wmin " << rep.wmin_observed << " A_wmin "
                      << rep.A_wmin << "\n";
            return 0;
        }

        if (decode_cmd->parsed()) {
            CodeProfile base = load_profile(de_profile);
            CodeProfile prof = effective_profile(base, de_flags);
            DecoderConfig cfg;
            cfg.scheme = de_flags.parsed();
            cfg.list_size = de_list;
            cfg.metric = de_metric == "exact" ? MetricMode::exact : MetricMode::approximate;
            cfg.precoder = de_flags.precoder(prof);
            if (cfg.scheme == Scheme::crc_polar)
                cfg.crc = CrcSpec::crc11();

            std::ifstream in(de_input);
            if (!in)
                throw ParseError("cannot open input file '" + de_input + "'");
            LlrBlock llr;
            if (de_format == "llr") {
                double x;
                while (in >> x)
                    llr.push_back(x);
            } else {
                std::string text, tok;
                while (in >> tok)
                    text += tok;
                if (de_format == "hex") {
                    for (char c : text) {
                        int d = std::isdigit(c) ? c - '0' : std::tolower(c) - 'a' + 10;
                        if (d < 0 || d > 15)
                            throw ParseError(std::string("bad hex digit '") + c + "'");
                        for (int b = 0; b < 4; ++b)
                            llr.push_back(((d >> b) & 1) ? -de_llr_mag : de_llr_mag);
                    }
                } else {
                    for (char c : text) {
                        if (c != '0' && c != '1')
                            throw ParseError(std::string("bad bit '") + c + "'");
                        llr.push_back(c == '1' ? -de_llr_mag : de_llr_mag);
                    }
                }
            }
            DecodeResult res = decode(llr, prof, cfg);
            std::cout << "rank metric crc message\n";
            for (std::size_t r = 0; r < res.ranked.size(); ++r) {
                const auto& e = res.ranked[r];
                std::cout << r + 1 << ' ' << e.metric << ' ' << (e.crc_ok ? "ok" : "-") << ' ';
                for (auto b : e.message)
                    std::cout << int(b);
                std::cout << "\n";
            }
            return 0;
        }

        if (simulate->parsed()) {
            CodeProfile base = load_profile(si_profile);
            CodeProfile prof = effective_profile(base, si_flags);
            DecoderConfig cfg;
            cfg.scheme = si_flags.parsed();
            cfg.list_size = si_list;
            cfg.metric = si_metric == "exact" ? MetricMode::exact : MetricMode::approximate;
            cfg.precoder = si_flags.precoder(prof);
            if (cfg.scheme == Scheme::crc_polar)
                cfg.crc = CrcSpec::crc11();

            std::vector<double> snrs;
            std::istringstream is(si_snrs);
            std::string tok;
            while (std::getline(is, tok, ','))
                if (!tok.empty())
                    snrs.push_back(std::stod(tok));

            StopRule stop{si_min_errors, si_max_frames};
            auto points = run_bler(prof, cfg, snrs, stop, si_seed);

            double awmin = si_bound_awmin;
            int wmin = si_bound_wmin;
            if (si_bound_formula) {
                auto s = polar_Awmin_formula(prof);
                awmin = static_cast<double>(s.A_wmin);
                wmin = s.wmin;
            }
            if (awmin >= 0.0) {
                const double rate = static_cast<double>(message_length(prof, cfg)) / prof.N;
                for (auto& p : points)
                    p.union_bound = union_bound(awmin, wmin, rate, p.ebn0_db);
            }
            if (si_out.empty()) {
                write_bler_csv(points, std::cout);
            } else {
                auto f = open_out(si_out);
                f << config_comment(*simulate) << "# seed=" << si_seed << "\n";
                write_bler_csv(points, f);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
