"""
Command-line interface for the cutoff laboratory.

Runs the verification suites, writes their JSON reports, CSV tables and SVG
plots into an output directory and exits with 0 only if every asserted bound
holds.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

# Add the src directory to Python path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from cutoff_lab.config import SUITE_NAMES, ConfigManager, LabConfig
from cutoff_lab.exceptions import CertificationError, ConfigurationError
from cutoff_lab.harness import (
    suite_certification,
    suite_derivative,
    suite_h2_scaling,
    suite_lemma_properties,
    suite_sawtooth_contrast,
)
from cutoff_lab.reporter import ExperimentReport, ReportWriter

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


class CutoffLabCLI:
    """Command-line interface for the verification suites."""

    def __init__(self):
        """Initialize the CLI."""
        self.config_manager = None
        self.config: Optional[LabConfig] = None

    def create_parser(self) -> argparse.ArgumentParser:
        """Create the command-line argument parser."""
        parser = argparse.ArgumentParser(
            prog="cutoff-lab",
            description="Numerical checks of the partition-of-unity cut-off operator",
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  # Run every suite with the default configuration
  python -m src.cutoff_lab.cli all --seed 42 --out reports/

  # Sawtooth contrast for three inverse slopes
  python -m src.cutoff_lab.cli sawtooth --eps-saw 1/16,1/64,1/256

  # Scaling fits on a coarser grid
  python -m src.cutoff_lab.cli h2 --L 8 --h 1/128 --epsilon-list 1/4,1/8,1/16,1/32,1/64,1/128

  # Generate sample config
  python -m src.cutoff_lab.cli --generate-config lab.yaml
            """,
        )
        parser.add_argument(
            "command",
            nargs="?",
            choices=list(SUITE_NAMES) + ["all"],
            help="Suite to run ('all' runs the suites listed in the config)",
        )

        # Configuration
        config_group = parser.add_argument_group("Configuration")
        config_group.add_argument("--config", help="Path to configuration file (JSON or YAML)")
        config_group.add_argument(
            "--validate-config", action="store_true", help="Validate configuration and exit"
        )
        config_group.add_argument(
            "--generate-config", metavar="FILE", help="Generate sample configuration file and exit"
        )

        # Grid and weights
        grid_group = parser.add_argument_group("Grid Options")
        grid_group.add_argument("--L", metavar="INT", help="Domain half length")
        grid_group.add_argument("--h", metavar="SPACING", help="Grid spacing, e.g. 1/256")
        grid_group.add_argument("--eta", metavar="FLOAT", help="Weight exponent of the H1_{-eta} norm")
        grid_group.add_argument("--zeta", metavar="FLOAT", help="Weight exponent for continuity checks")
        grid_group.add_argument("--eta-max", metavar="FLOAT", help="Upper end of the admissible weight range")

        # Experiment options
        experiment_group = parser.add_argument_group("Experiment Options")
        experiment_group.add_argument("--seed", type=int, help="Random seed")
        experiment_group.add_argument(
            "--suites", metavar="LIST", help="Comma-separated suites run by 'all'"
        )
        experiment_group.add_argument(
            "--epsilon-list", metavar="LIST", help="Comma-separated cut-off scales for the h2 suite"
        )
        experiment_group.add_argument(
            "--eps-saw", metavar="LIST", help="Comma-separated sawtooth inverse slopes"
        )
        experiment_group.add_argument("--delta", metavar="FLOAT", help="Sawtooth amplitude parameter")
        experiment_group.add_argument("--delta-prime", metavar="FLOAT", help="Sawtooth shift")
        experiment_group.add_argument(
            "--samples", type=int, metavar="N", help="Samples per epsilon for the uniform bound"
        )

        # Output options
        output_group = parser.add_argument_group("Output Options")
        output_group.add_argument("--out", metavar="DIR", help="Output directory for reports")
        output_group.add_argument("--no-plots", action="store_true", help="Skip the SVG plots")
        output_group.add_argument("--verbose", "-v", action="store_true", help="Enable verbose output")
        output_group.add_argument("--debug", action="store_true", help="Enable debug output")

        return parser

    def run(self, args: Optional[List[str]] = None) -> int:
        """
        Run the requested suites.

        Args:
            args: Command-line arguments (defaults to sys.argv)

        Returns:
            Exit code (0 all bounds hold, 1 failure, 2 configuration error)
        """
        parser = self.create_parser()
        parsed_args = parser.parse_args(args)
        self._setup_logging(parsed_args)

        try:
            if parsed_args.generate_config:
                return self._generate_config(parsed_args.generate_config)

            self.config_manager = ConfigManager(config_file=parsed_args.config, load_env=True)
            self.config_manager.update_from_args(vars(parsed_args))
            self.config = self.config_manager.get_config()

            errors = self.config_manager.validate_config()
            if errors:
                print("Configuration errors:")
                for error in errors:
                    print(f"  - {error}")
                return EXIT_CONFIG

            if parsed_args.validate_config:
                print("Configuration is valid")
                return EXIT_OK

            if not parsed_args.command:
                parser.print_help()
                print("\nError: a suite name or 'all' is required")
                return EXIT_CONFIG

            return self._run_suites(parsed_args)

        except ConfigurationError as e:
            print(f"Configuration error: {e}")
            return EXIT_CONFIG
        except CertificationError as e:
            print(f"Certification failed: {e}")
            return EXIT_FAILURE
        except KeyboardInterrupt:
            print("\nRun cancelled by user")
            return EXIT_FAILURE
        except Exception as e:
            if parsed_args.debug:
                import traceback

                traceback.print_exc()
            else:
                print(f"Error: {e}")
            return EXIT_FAILURE

    def _setup_logging(self, args: argparse.Namespace) -> None:
        level = logging.WARNING
        if args.verbose:
            level = logging.INFO
        if args.debug:
            level = logging.DEBUG
        logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s")

    def _run_suites(self, args: argparse.Namespace) -> int:
        """Run the selected suites and write all outputs."""
        names = list(self.config.suites) if args.command == "all" else [args.command]
        writer = ReportWriter(self.config.out_dir)

        reports = []
        for name in names:
            print(f"Running {name}...")
            report = self._run_suite(name)
            reports.append(report)
            writer.write_report(report)
            writer.write_table(report)
            if not args.no_plots:
                self._plot(writer, report)
            status = "PASS" if report.passed else "FAIL"
            print(f"  {status}: {sum(c.passed for c in report.cases)}/{len(report.cases)} cases "
                  f"in {report.runtime:.1f}s")

        summary = writer.write_summary(reports)
        if self.config.verbose:
            print(f"Summary written to {summary}")

        failures = writer.failure_digest(reports)
        if failures:
            print("Failing cases:")
            for line in failures:
                print(f"  - {line}")
            return EXIT_FAILURE

        print(f"All {len(reports)} suites passed; reports in {writer.out_dir}")
        return EXIT_OK

    def _run_suite(self, name: str) -> ExperimentReport:
        config = self.config
        if name == "certify":
            return suite_certification(config)
        if name == "lemma":
            return suite_lemma_properties(config, config.families, config.eta)
        if name == "h2":
            return suite_h2_scaling(config, config.epsilon_list, config.families, config.eta)
        if name == "sawtooth":
            return suite_sawtooth_contrast(None, config, config.eta)
        if name == "derivative":
            return suite_derivative(None, None, config, config.zeta, config.eta)
        raise ConfigurationError(f"Unknown suite '{name}'")

    def _plot(self, writer: ReportWriter, report: ExperimentReport) -> None:
        rows: List[Dict[str, float]] = report.table
        if report.suite_name == "h2" and rows:
            eps = [row["epsilon"] for row in rows]
            writer.plot_loglog(
                "h2_scaling",
                [("delta0", eps, [row["delta0"] for row in rows]),
                 ("delta1", eps, [row["delta1"] for row in rows])],
                xlabel="epsilon",
                ylabel="sampled maximum",
                fits=report.fitted_slopes[:2],
            )
        elif report.suite_name == "sawtooth" and rows:
            inverse = [row["inverse_eps_saw"] for row in rows]
            writer.plot_loglog(
                "sawtooth_ratios",
                [("ratio_g", inverse, [row["ratio_g"] for row in rows]),
                 ("ratio_f_eps", inverse, [row["ratio_f_eps"] for row in rows])],
                xlabel="1 / eps_saw",
                ylabel="Lipschitz ratio on [4h, 1-4h]",
            )

    def _generate_config(self, output_file: str) -> int:
        """Generate a sample configuration file."""
        try:
            ConfigManager(load_env=False).save_config(output_file)
            print(f"Sample configuration saved to {output_file}")
            return EXIT_OK
        except OSError as e:
            print(f"Failed to generate configuration: {e}")
            return EXIT_FAILURE


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on argv and return the exit code."""
    return CutoffLabCLI().run(argv)


def main():
    """Main entry point for the CLI."""
    exit_code = run_cli()
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
