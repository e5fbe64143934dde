import pytest

from graybench.errors import BuildError, ConfigError, ToolchainError
from graybench.kernels import Variant
from graybench.matrix import (
    CompilerSpec,
    FlagSet,
    MatrixConfig,
    build_external,
    builtin_label,
    capture_manifest,
    compiler_version,
    expand,
    external_label,
    format_config,
    format_manifest,
    parse_config,
    parse_manifest,
)

from conftest import requires_cc

ALL_VARIANTS = tuple(Variant)
FIVE = tuple(v for v in Variant if v is not Variant.EMPTY)


def config(**kwargs):
    defaults = dict(
        variants=FIVE,
        compilers=(CompilerSpec("cc", "cc"), CompilerSpec("clang", "clang")),
        flag_sets=(FlagSet("base"), FlagSet("o3", ("-O3",))),
        include_builtin=False,
    )
    defaults.update(kwargs)
    return MatrixConfig(**defaults)


class TestExpand:
    def test_cartesian_product(self):
        jobs = expand(config())
        assert len(jobs) == 2 * 2 * 5
        assert len({j.label for j in jobs}) == 20

    def test_builtin_only(self):
        jobs = expand(
            config(variants=ALL_VARIANTS, compilers=(), flag_sets=(), include_builtin=True)
        )
        assert len(jobs) == 6
        assert all(j.kind == "builtin" for j in jobs)

    def test_deterministic(self):
        assert expand(config()) == expand(config())

    def test_duplicate_flag_labels_rejected(self):
        with pytest.raises(ConfigError):
            config(flag_sets=(FlagSet("o3", ("-O3",)), FlagSet("o3", ("-O2",))))

    def test_duplicate_compiler_ids_rejected(self):
        with pytest.raises(ConfigError):
            config(compilers=(CompilerSpec("cc", "cc"), CompilerSpec("cc", "gcc")))

    def test_needs_some_target(self):
        with pytest.raises(ConfigError):
            config(compilers=(), flag_sets=(), include_builtin=False)

    def test_label_grammar(self):
        assert (
            external_label("clang", "o3", Variant.DOUBLE2D_RM)
            == "c-clang-o3-unix-double2d"
        )
        assert (
            external_label("clang", "o3", Variant.DOUBLE2D_CM)
            == "c-clang-o3-unix-double2dt"
        )
        assert builtin_label(Variant.INT1D) == "builtin-int1d"


CONFIG_TEXT = """\
# demo matrix
variants = double2d_rm, int1d
include_builtin = true
reps = 3
sizes = first:5

compiler cc = cc
flags base =
flags o3 = -O3 -march=native
"""


class TestConfigFile:
    def test_parse(self):
        cfg = parse_config(CONFIG_TEXT)
        assert cfg.variants == (Variant.DOUBLE2D_RM, Variant.INT1D)
        assert cfg.include_builtin and cfg.reps == 3 and cfg.sizes == "first:5"
        assert cfg.compilers == (CompilerSpec("cc", "cc"),)
        assert cfg.flag_sets == (FlagSet("base", ()), FlagSet("o3", ("-O3", "-march=native")))

    def test_round_trip(self):
        cfg = parse_config(CONFIG_TEXT)
        assert parse_config(format_config(cfg)) == cfg

    @pytest.mark.parametrize(
        "text",
        [
            "bogus = 1\nvariants = empty\ncompiler cc = cc\nflags o3 = -O3\n",
            "variants = warp9\ncompiler cc = cc\nflags o3 = -O3\n",
            "variants = empty\ninclude_builtin = maybe\n",
            "variants = empty\nreps = many\ncompiler cc = cc\nflags a =\n",
            "variants = empty\nreps = 1\nreps = 2\ncompiler cc = cc\nflags a =\n",
            "no equals sign",
        ],
    )
    def test_bad_configs_rejected(self, text):
        with pytest.raises(ConfigError):
            parse_config(text)


class TestManifest:
    def test_capture_populates_fields(self):
        m = capture_manifest()
        assert m.hostname and m.os != "" and m.cpu != ""
        assert m.compiler_id == "builtin"
        assert m.timer_resolution_seconds > 0
        assert m.harness_version

    def test_two_captures_agree(self, tmp_path):
        src = tmp_path / "a.c"
        src.write_text("int main(void){return 0;}\n")
        first = capture_manifest(CompilerSpec("cc", "cc"), source_files=[src])
        second = capture_manifest(CompilerSpec("cc", "cc"), source_files=[src])
        assert first.compiler_version == second.compiler_version
        assert first.source_digests == second.source_digests

    def test_absent_compiler_is_unknown(self):
        m = capture_manifest(CompilerSpec("ghost", "definitely-not-a-compiler-xyz"))
        assert m.compiler_version == "unknown"

    def test_version_probe_unknown_for_missing(self):
        assert compiler_version("definitely-not-a-compiler-xyz") == "unknown"

    def test_format_parse_round_trip(self):
        m = capture_manifest()
        text = format_manifest({"builtin-empty": m})
        records = parse_manifest(text)
        assert set(records) == {"builtin-empty"}
        rec = records["builtin-empty"]
        assert rec["hostname"] == m.hostname
        assert rec["os"] == m.os
        assert rec["compiler_id"] == "builtin"

    def test_unknown_fields_are_explicit(self):
        m = capture_manifest(CompilerSpec("ghost", "no-such-binary-anywhere"))
        text = format_manifest({"x": m})
        assert "compiler_version: unknown" in text


@requires_cc
class TestBuildExternal:
    def test_build_and_run(self, corpus_dir, tmp_path):
        result = build_external(
            Variant.INT1D, CompilerSpec("cc", "cc"), FlagSet("o1", ("-O1",)),
            corpus_dir, tmp_path,
        )
        assert result.executable.exists()
        assert result.manifest.compiler_version != "unknown"
        assert set(result.manifest.source_digests) == {
            "bench.c", "int1d.c", "ppm_unix.c", "graybench.h",
        }

    def test_rebuild_digests_identical(self, corpus_dir, tmp_path):
        args = (Variant.EMPTY, CompilerSpec("cc", "cc"), FlagSet("base"))
        first = build_external(*args, corpus_dir, tmp_path / "a")
        second = build_external(*args, corpus_dir, tmp_path / "b")
        assert first.manifest.source_digests == second.manifest.source_digests

    def test_unknown_compiler(self, corpus_dir, tmp_path):
        with pytest.raises(ToolchainError):
            build_external(
                Variant.EMPTY, CompilerSpec("nope", "no-such-compiler-cmd"),
                FlagSet("base"), corpus_dir, tmp_path,
            )

    def test_compile_failure_carries_diagnostics(self, corpus_dir, tmp_path):
        with pytest.raises(BuildError) as info:
            build_external(
                Variant.EMPTY, CompilerSpec("cc", "cc"),
                FlagSet("bad", ("-Werror", "-Wall", "-DGRAYBENCH_BREAK_BUILD", "-Dconvert=")),
                corpus_dir, tmp_path,
            )
        assert info.value.diagnostics

    def test_missing_corpus(self, tmp_path):
        with pytest.raises(BuildError, match="missing"):
            build_external(
                Variant.EMPTY, CompilerSpec("cc", "cc"), FlagSet("base"),
                tmp_path / "nowhere", tmp_path,
            )
