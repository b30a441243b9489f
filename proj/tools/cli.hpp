#pragma once

// Command-line front end. dispatch() is kept separate from main() so tests
// can drive every subcommand in-process.
//
// Exit status: 0 success, 1 usage, 2 I/O or malformed input,
// 3 cryptographic failure (authentication or key confirmation).

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "tcsp/tcsp.hpp"

namespace tcsp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_io = 2;
inline constexpr int exit_crypto = 3;

struct ParamOptions {
  int l = GroupParams::default_half;
  int r = GroupParams::default_half;
  int word_length = GroupParams::default_word_length;

  GroupParams make() const { return GroupParams(l, r, word_length); }
};

inline void add_param_options(CLI::App& cmd, ParamOptions& p) {
  cmd.add_option("--l", p.l, "left subgroup strand budget")->capture_default_str();
  cmd.add_option("--r", p.r, "right subgroup strand budget")->capture_default_str();
  cmd.add_option("--W", p.word_length, "letters per sampled secret")->capture_default_str();
}

// --seed, then $TCSP_SEED, then OS entropy.
inline SeededRng resolve_rng(const std::string& seed_hex) {
  std::string hex = seed_hex;
  if (hex.empty()) {
    if (const char* env = std::getenv("TCSP_SEED")) hex = env;
  }
  if (hex.empty()) return SeededRng::from_entropy();
  const auto seed = parse_seed_hex(hex);
  if (!seed) throw ContractViolation("seed must be 64 hex characters");
  return SeededRng(*seed);
}

inline Scheme parse_scheme(const std::string& name) {
  if (name == "cs") return Scheme::Cs;
  if (name == "twin") return Scheme::Twin;
  throw ContractViolation("unknown scheme '" + name + "' (expected cs or twin)");
}

inline std::string key_hex(const SymKey& k) { return to_hex(k.bytes); }

inline void describe(std::ostream& out, const std::string& name, const CanonicalForm& cf) {
  out << name << ": n=" << cf.n << " delta_exp=" << cf.delta_exp << " factors=" << cf.factors.size() << "\n  "
      << to_string(cf) << "\n";
}

inline void inspect_bytes(std::ostream& out, const Bytes& data) {
  const std::string_view head(reinterpret_cast<const char*>(data.data()), std::min<std::size_t>(data.size(), 7));
  if (head.starts_with(key_magic)) {
    ByteReader r(data);
    const detail::KeyHeader h = detail::read_key_header(r);
    out << "key file: scheme=" << to_string(h.scheme) << " kind=" << (h.kind == KeyKind::Public ? "public" : "secret")
        << " l=" << h.params.left() << " r=" << h.params.right() << " W=" << h.params.word_length() << "\n";
    out << "base: " << to_string(h.params.base()) << "\n";
    if (h.kind == KeyKind::Public) {
      const PublicKey pk = parse_public_key(data);
      if (const auto* cs = std::get_if<CsPublicKey>(&pk)) {
        describe(out, "X", cs->element);
      } else {
        const auto& twin = std::get<TwinPublicKey>(pk);
        describe(out, "X1", twin.elements[0]);
        describe(out, "X2", twin.elements[1]);
      }
    } else {
      const SecretKey sk = parse_secret_key(data);
      if (const auto* cs = std::get_if<CsKeyPair>(&sk)) {
        describe(out, "X", cs->element);
        out << "x: " << to_string(cs->secret) << "\n";
      } else {
        const auto& twin = std::get<TwinKeyPair>(sk);
        describe(out, "X1", twin.elements[0]);
        describe(out, "X2", twin.elements[1]);
        out << "x1: " << to_string(twin.secrets[0]) << "\nx2: " << to_string(twin.secrets[1]) << "\n";
      }
    }
  } else if (head.starts_with(ciphertext_magic)) {
    const CiphertextFile file = parse_ciphertext(data);
    out << "ciphertext: scheme=" << to_string(file.scheme) << " payload=" << file.ct.box.ct.size()
        << " bytes tag=" << to_hex(file.ct.box.tag) << "\n";
    describe(out, "Y", file.ct.header);
  } else if (head.starts_with(element_magic) && data.size() > 5 && data[5] == kind_word) {
    out << "word: " << to_string(parse_word(data)) << "\n";
  } else {
    describe(out, "element", parse_canonical(data));
  }
}

inline int run(CLI::App& app, int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }
  return exit_ok;
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Twin conjugacy search toolkit over braid groups"};
  app.require_subcommand(1);

  std::string seed_hex;
  ParamOptions params;

  // keygen
  std::string scheme_name = "twin";
  std::string out_prefix;
  auto* keygen = app.add_subcommand("keygen", "generate a CS or twin key pair (<out>.pub, <out>.sec)");
  keygen->add_option("--scheme", scheme_name, "cs or twin")->capture_default_str();
  keygen->add_option("--out", out_prefix, "output path prefix")->required();
  keygen->add_option("--seed", seed_hex, "64 hex chars; falls back to $TCSP_SEED");
  add_param_options(*keygen, params);

  // encrypt / decrypt
  std::string pk_path, sk_path, in_path, out_path;
  auto* encrypt = app.add_subcommand("encrypt", "encrypt a file to a public key");
  encrypt->add_option("--pk", pk_path, "public key file")->required();
  encrypt->add_option("--in", in_path, "plaintext file")->required();
  encrypt->add_option("--out", out_path, "ciphertext file")->required();
  encrypt->add_option("--seed", seed_hex, "64 hex chars; falls back to $TCSP_SEED");

  auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
  decrypt->add_option("--sk", sk_path, "secret key file")->required();
  decrypt->add_option("--in", in_path, "ciphertext file")->required();
  decrypt->add_option("--out", out_path, "plaintext file (default: stdout)");

  // kex-demo
  std::string mode = "pipe";
  std::optional<std::uint16_t> listen_port;
  std::string connect_to;
  bool no_confirm = false;
  bool nike = false;
  auto* kex = app.add_subcommand("kex-demo", "run the interactive or non-interactive key exchange");
  kex->add_option("--mode", mode, "pipe or socketpair (in-process peers)")
      ->check(CLI::IsMember({"pipe", "socketpair"}))
      ->capture_default_str();
  auto* listen_opt = kex->add_option("--listen", listen_port, "act as responder on 127.0.0.1:PORT");
  kex->add_option("--connect", connect_to, "act as initiator, connecting to HOST:PORT")->excludes(listen_opt);
  kex->add_flag("--no-confirm", no_confirm, "derive the key without the CONFIRM round");
  kex->add_flag("--nike", nike, "non-interactive variant with two freshly generated identities");
  kex->add_option("--seed", seed_hex, "64 hex chars; falls back to $TCSP_SEED");
  add_param_options(*kex, params);

  // trapdoor-demo / reduce-demo
  std::size_t trials = 1000;
  std::size_t queries = 50;
  auto* trapdoor = app.add_subcommand("trapdoor-demo", "measure the trapdoor test on honest and dishonest queries");
  trapdoor->add_option("--trials", trials, "number of trials")->capture_default_str();
  trapdoor->add_option("--seed", seed_hex, "64 hex chars; falls back to $TCSP_SEED");
  add_param_options(*trapdoor, params);

  auto* reduce = app.add_subcommand("reduce-demo", "simulate the CCS reduction with a scripted adversary");
  reduce->add_option("--queries", queries, "decision queries issued before answering")->capture_default_str();
  reduce->add_option("--seed", seed_hex, "64 hex chars; falls back to $TCSP_SEED");
  add_param_options(*reduce, params);

  // inspect
  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "pretty-print a key, ciphertext or element file");
  inspect->add_option("file", inspect_path, "file to inspect")->required();

  if (const int code = run(app, argc, argv, out, err); code != exit_ok || app.get_subcommands().empty()) return code;

  try {
    if (*keygen) {
      const Scheme scheme = parse_scheme(scheme_name);
      SeededRng rng = resolve_rng(seed_hex);
      const GroupParams gp = params.make();
      if (scheme == Scheme::Cs) {
        const CsKeyPair kp = cs_keygen(gp, rng);
        write_file(out_prefix + ".pub", serialize_public_key(kp.public_key()));
        write_file(out_prefix + ".sec", serialize_secret_key(kp));
      } else {
        const TwinKeyPair kp = twin_keygen(gp, rng);
        write_file(out_prefix + ".pub", serialize_public_key(kp.public_key()));
        write_file(out_prefix + ".sec", serialize_secret_key(kp));
      }
      out << "wrote " << out_prefix << ".pub and " << out_prefix << ".sec (" << to_string(scheme) << ")\n";
    } else if (*encrypt) {
      const PublicKey pk = parse_public_key(read_file(pk_path));
      const Bytes message = read_file(in_path);
      SeededRng rng = resolve_rng(seed_hex);
      CiphertextFile file = std::visit(
          [&](const auto& key) -> CiphertextFile {
            if constexpr (std::is_same_v<std::decay_t<decltype(key)>, CsPublicKey>) {
              return {Scheme::Cs, cs_encrypt(key, message, rng)};
            } else {
              return {Scheme::Twin, twin_encrypt(key, message, rng)};
            }
          },
          pk);
      write_file(out_path, serialize_ciphertext(file));
    } else if (*decrypt) {
      const SecretKey sk = parse_secret_key(read_file(sk_path));
      const CiphertextFile file = parse_ciphertext(read_file(in_path));
      const Bytes message = std::visit(
          [&](const auto& key) -> Bytes {
            if constexpr (std::is_same_v<std::decay_t<decltype(key)>, CsKeyPair>) {
              if (file.scheme != Scheme::Cs) throw ContractViolation("ciphertext scheme does not match the cs key");
              return cs_decrypt(key, file.ct);
            } else {
              if (file.scheme != Scheme::Twin) throw ContractViolation("ciphertext scheme does not match the twin key");
              return twin_decrypt(key, file.ct);
            }
          },
          sk);
      if (out_path.empty()) {
        out.write(reinterpret_cast<const char*>(message.data()), static_cast<std::streamsize>(message.size()));
        out.flush();
      } else {
        write_file(out_path, message);
      }
    } else if (*kex) {
      const GroupParams gp = params.make();
      SeededRng rng = resolve_rng(seed_hex);
      const KexOptions opts{!no_confirm};
      if (nike) {
        const NikeIdentity alice = nike_identity(gp, SubgroupSide::Left, rng);
        const NikeIdentity bob = nike_identity(gp, SubgroupSide::Right, rng);
        const SymKey ka = nike_shared_key(alice, bob.public_part());
        const SymKey kb = nike_shared_key(bob, alice.public_part());
        out << "alice key: " << key_hex(ka) << "\nbob key:   " << key_hex(kb)
            << "\nkeys match: " << (ka == kb ? "yes" : "no") << "\n";
        return ka == kb ? exit_ok : exit_crypto;
      }
      if (listen_port) {
        TcpListener listener(*listen_port);
        out << "listening on 127.0.0.1:" << listener.port() << "\n" << std::flush;
        auto ch = listener.accept();
        SeededRng role_rng = rng.fork("responder");
        const SymKey k = kex_run(KexRole::Responder, *ch, gp, role_rng, opts);
        out << "responder key: " << key_hex(k) << "\n";
        return exit_ok;
      }
      if (!connect_to.empty()) {
        const auto colon = connect_to.rfind(':');
        if (colon == std::string::npos) throw ContractViolation("--connect expects HOST:PORT");
        const int port = std::stoi(connect_to.substr(colon + 1));
        auto ch = tcp_connect(connect_to.substr(0, colon), static_cast<std::uint16_t>(port));
        SeededRng role_rng = rng.fork("initiator");
        const SymKey k = kex_run(KexRole::Initiator, *ch, gp, role_rng, opts);
        out << "initiator key: " << key_hex(k) << "\n";
        return exit_ok;
      }
      SeededRng init_rng = rng.fork("initiator");
      SeededRng resp_rng = rng.fork("responder");
      auto [a, b] = mode == "socketpair" ? make_socket_pair() : make_pipe_pair();
      const LoopbackResult res = kex_pair(*a, *b, gp, init_rng, resp_rng, opts);
      Sha256 transcript;
      transcript.update(res.initiator_sent).update(res.responder_sent);
      out << "initiator key: " << key_hex(res.initiator_key) << "\nresponder key: " << key_hex(res.responder_key)
          << "\nkeys match: " << (res.initiator_key == res.responder_key ? "yes" : "no")
          << "\ntranscript bytes: " << res.initiator_sent.size() + res.responder_sent.size()
          << "\ntranscript sha256: " << to_hex(transcript.finish()) << "\n";
      return res.initiator_key == res.responder_key ? exit_ok : exit_crypto;
    } else if (*trapdoor) {
      SeededRng rng = resolve_rng(seed_hex);
      out << trapdoor_trials(params.make(), trials, rng).summary() << "\n";
    } else if (*reduce) {
      SeededRng rng = resolve_rng(seed_hex);
      const ReductionReport report = reduction_demo(params.make(), queries, rng);
      out << report.summary() << "\n";
      return report.succeeded && report.matches_ground_truth ? exit_ok : exit_crypto;
    } else if (*inspect) {
      inspect_bytes(out, read_file(inspect_path));
    }
    return exit_ok;
  } catch (const AuthenticationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_crypto;
  } catch (const ProtocolError& e) {
    err << "error: " << e.what() << "\n";
    return exit_crypto;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace tcsp::cli
