import sys
import argparse
import logging
from dataclasses import replace

from app.domain.code_dto import DistanceKind
from app.domain.experiment_dto import ExperimentConfig
from app.domain.field_dto import FieldSpec
from app.domain.report_dto import CSV_HEADER, TABLE_CSV_HEADER
from app.error.exceptions import (
    BudgetExceededError,
    ConfigError,
    FactorizationInfeasibleError,
    MsrError,
)
from app.services.construction_service import ConstructionService
from app.services.field_service import FieldService
from app.services.simulation_service import SimulationService
from app.services.stream_service import StreamService
from app.services.table_service import TableService
from app.services.verification_service import DEFAULT_ENUMERATION_BUDGET, VerificationService
from app.storage.artifact_store import ArtifactStore
from app.util.json_codec import JsonCodec
from app.util.matrix_calculator import MatrixCalculator

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

logger = logging.getLogger(__name__)


def validate_int_list(text, name):
    """
    Parses a comma-separated list of integers such as '4,2,1'.
    """
    try:
        return tuple(int(part) for part in text.split(","))
    except (AttributeError, ValueError):
        raise ConfigError(f"Error: {name} must be a comma-separated list of integers, got '{text}'.")


def validate_field(text):
    """
    Parses 'q,M' or 'q,M,poly' into a FieldSpec.
    Without a polynomial the default primitive modulus of degree M is used.
    """
    parts = [p.strip() for p in (text or "").split(",", 2)]
    if len(parts) < 2:
        raise ConfigError(f"Error: --field expects q,M[,poly], got '{text}'.")

    q, m = validate_int_list(",".join(parts[:2]), "--field")
    if len(parts) == 3:
        return FieldSpec.from_poly_string(q, m, parts[2])
    return FieldSpec.default(q, m)


def validate_code(text):
    params = validate_int_list(text, "--code")
    if len(params) != 3:
        raise ConfigError(f"Error: --code expects n,k,m, got '{text}'.")
    n, k, m = params
    if not 1 <= k <= n or m < 0:
        raise ConfigError(f"Error: code parameters require 1 <= k <= n and m >= 0, got [{n},{k},{m}].")
    return params


def custom_error_handler(message):
    """
    Overrides the default argparse behavior (sys.exit) to raise an exception instead,
    so that main can map it to the usage exit code.
    """
    raise ConfigError(f"Command syntax error: {message}")


def setup_parser():
    """
    Configures the argument parser: field, code {build, verify, distance}, sim, table1.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='Log progress to stderr')

    field_args = argparse.ArgumentParser(add_help=False)
    field_args.add_argument('--field', type=str, help='Field as q,M[,poly], e.g. 2,11,x^11+x^2+1')
    field_args.add_argument('--alpha', type=str, help='Element coefficients c0,c1,... (low degree first)')
    field_args.add_argument('--assume-primitive', action='store_true',
                            help='Skip irreducibility and primitivity certification')

    code_args = argparse.ArgumentParser(add_help=False)
    code_args.add_argument('--code', type=str, help='Code parameters n,k,m')
    code_args.add_argument('--rows', type=str, help='Row indices i1,...,ik for MSR extraction')
    code_args.add_argument('--artifact', type=str, help='Code descriptor JSON written by "code build"')

    parser = argparse.ArgumentParser(
        prog='msr',
        description='Maximum sum rank convolutional codes: construction, verification and streaming simulation',
    )
    parser.error = custom_error_handler

    subparsers = parser.add_subparsers(dest='command', title='Available commands')

    # Field Command
    field_parser = subparsers.add_parser('field', parents=[common, field_args],
                                         help='Find or certify a primitive normal element')
    field_parser.error = custom_error_handler
    field_parser.add_argument('--out', type=str, help='JSON report path')

    # Code Commands
    code_parser = subparsers.add_parser('code', help='Build, verify or measure MSR codes')
    code_parser.error = custom_error_handler
    code_commands = code_parser.add_subparsers(dest='code_command', title='Code commands')

    build_parser = code_commands.add_parser('build', parents=[common, field_args, code_args],
                                            help='Construct an MSR code')
    build_parser.error = custom_error_handler
    build_parser.add_argument('--out', type=str, help='Code descriptor path (stdout if omitted)')

    verify_parser = code_commands.add_parser('verify', parents=[common, field_args, code_args],
                                             help='Run the MSR and super-regularity checks')
    verify_parser.error = custom_error_handler
    verify_parser.add_argument('--depth', type=int, help='Depth j of the MSR test (default: m)')
    verify_parser.add_argument('--max-minor', type=int, help='Largest minor checked for super-regularity')
    verify_parser.add_argument('--out', type=str, help='JSON report path')

    distance_parser = code_commands.add_parser('distance', parents=[common, field_args, code_args],
                                               help='Brute-force column distance profiles')
    distance_parser.error = custom_error_handler
    distance_parser.add_argument('--depth', type=int, help='Largest depth j (default: m)')
    distance_parser.add_argument('--kind', choices=[k.value for k in DistanceKind] + ['all'], default='all',
                                 help='Distance kind')
    distance_parser.add_argument('--budget', type=int, default=DEFAULT_ENUMERATION_BUDGET,
                                 help='Maximum number of enumerated source sequences')
    distance_parser.add_argument('--out', type=str, help='JSON report path')

    # Simulation Command
    sim_parser = subparsers.add_parser('sim', parents=[common], help='Simulate streaming over CH(S, W)')
    sim_parser.error = custom_error_handler
    sim_parser.add_argument('--config', required=True, type=str, help='Experiment configuration JSON')
    sim_parser.add_argument('--out', type=str, help='JSON report path (overrides the configuration)')

    # Table Command
    table_parser = subparsers.add_parser('table1', parents=[common], help='Reproduce the achievable-field table')
    table_parser.error = custom_error_handler
    table_parser.add_argument('--out', type=str, help='CSV path')
    table_parser.add_argument('--json', type=str, help='JSON report path')

    return parser


def build_field(args):
    if not args.field:
        raise ConfigError("Error: --field is required.")
    field_service = FieldService(validate_field(args.field), assume_primitive=args.assume_primitive)

    if args.alpha:
        coords = list(validate_int_list(args.alpha, "--alpha"))
        if len(coords) > field_service.spec.m:
            raise ConfigError(f"Error: --alpha has more than M={field_service.spec.m} coefficients.")
        alpha = field_service.element(coords + [0] * (field_service.spec.m - len(coords)))
    else:
        alpha = field_service.find_primitive_normal()

    return field_service, alpha


def build_code(args):
    """
    Loads the code from --artifact, or constructs it from --field/--code/--rows.
    Returns (code, field_service).
    """
    if args.artifact:
        return ArtifactStore().load_code(args.artifact, assume_primitive=args.assume_primitive)

    if not args.code:
        raise ConfigError("Error: either --artifact or --field with --code is required.")
    n, k, m = validate_code(args.code)
    rows = validate_int_list(args.rows, "--rows") if args.rows else None

    field_service, alpha = build_field(args)
    code = ConstructionService(field_service).build_msr_code(alpha, n, k, m, rows)
    return code, field_service


def emit(payload, path):
    store = ArtifactStore()
    if path:
        store.save_json(payload, path)
    else:
        print(store.dumps(payload))


def cmd_field(args):
    field_service, alpha = build_field(args)

    factorization = None if args.assume_primitive else field_service.factorize()
    primitive = None if args.assume_primitive else field_service.is_primitive(alpha)
    normal = field_service.is_normal(alpha)
    field_service.display_field(alpha, factorization, primitive, normal)

    if args.out:
        ArtifactStore().save_json({
            "field": JsonCodec.field_to_json(field_service.spec),
            "alpha": field_service.coords(alpha),
            "factorization": None if factorization is None else {str(p): e for p, e in factorization.items()},
            "primitive": primitive,
            "normal": normal,
            "certified": bool(primitive) and normal,
        }, args.out)

    return EXIT_OK if normal and primitive is not False else EXIT_VERIFICATION_FAILED


def cmd_code_build(args):
    code, field_service = build_code(args)
    payload = JsonCodec.code_to_json(code, field_service)
    if args.out:
        ConstructionService(field_service).display_code(code)
    emit(payload, args.out)
    return EXIT_OK


def cmd_code_verify(args):
    code, field_service = build_code(args)
    construction = ConstructionService(field_service)
    verification = VerificationService(field_service, construction)

    depth = code.m if args.depth is None else args.depth
    verdict = verification.verify_msr(code, depth)

    superregular = None
    if code.rows is not None:
        hankel = construction.build_hankel(construction.build_T_blocks(code.n, code.m, code.basis.alpha))
        superregular = MatrixCalculator.is_superregular(hankel, args.max_minor)

    verification.display_verification(code, verdict, superregular)
    if args.out:
        ArtifactStore().save_json({
            "code": code.label(),
            "msr": verdict.to_json(),
            "superregular": None if superregular is None else superregular.to_json(),
        }, args.out)

    # super-regularity is only sufficient; the exit follows the MSR verdict
    return EXIT_OK if verdict.verified else EXIT_VERIFICATION_FAILED


def cmd_code_distance(args):
    code, field_service = build_code(args)
    verification = VerificationService(field_service, budget=args.budget)

    depth = code.m if args.depth is None else args.depth
    kinds = list(DistanceKind) if args.kind == 'all' else [DistanceKind(args.kind)]
    profiles = [verification.column_distance_bruteforce(code, depth, kind) for kind in kinds]

    verification.display_profiles(code, profiles)
    if args.out:
        ArtifactStore().save_json({
            "code": code.label(),
            "profiles": {
                p.kind.value: {"values": list(p.values), "maximal": p.is_maximal(code.n, code.k)}
                for p in profiles
            },
        }, args.out)
    return EXIT_OK


def cmd_sim(args):
    store = ArtifactStore()
    cfg = ExperimentConfig.from_json(store.load_json(args.config))

    field_service = FieldService(cfg.spec, assume_primitive=cfg.assume_primitive)
    alpha = field_service.element(cfg.alpha) if cfg.alpha else field_service.find_primitive_normal()
    construction = ConstructionService(field_service)
    code = construction.build_msr_code(alpha, cfg.n, cfg.k, cfg.m, cfg.rows)

    stream = StreamService(field_service, construction)
    simulation = SimulationService(stream)

    channel = cfg.channel
    if cfg.worst_case:
        pattern = stream.worst_case_pattern(code, cfg.delay, seed=cfg.seed)
        channel = replace(channel, matrices=pattern.mats)

    report = simulation.simulate(code, channel, cfg.delay, cfg.trials)
    simulation.display_report(report)

    payload = report.to_json()
    payload.update({"code": code.label(), "S": channel.S, "W": channel.W, "seed": cfg.seed})
    json_path = args.out or cfg.json_path
    if json_path:
        store.save_json(payload, json_path)
    if cfg.csv_path:
        store.save_csv(CSV_HEADER, report.csv_rows(), cfg.csv_path)
    return EXIT_OK


def cmd_table1(args):
    service = TableService()
    results = service.run()
    service.display_table(results)

    store = ArtifactStore()
    if args.out:
        store.save_csv(TABLE_CSV_HEADER, [r.to_row() for r in results], args.out)
    if args.json:
        store.save_json([r.to_json() for r in results], args.json)

    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFICATION_FAILED


CODE_COMMANDS = {
    'build': cmd_code_build,
    'verify': cmd_code_verify,
    'distance': cmd_code_distance,
}


def dispatch(args):
    if args.command == 'field':
        return cmd_field(args)
    if args.command == 'code':
        if args.code_command not in CODE_COMMANDS:
            raise ConfigError("Error: expected one of 'code build', 'code verify', 'code distance'.")
        return CODE_COMMANDS[args.code_command](args)
    if args.command == 'sim':
        return cmd_sim(args)
    if args.command == 'table1':
        return cmd_table1(args)
    raise ConfigError("Error: no command given. Use one of: field, code, sim, table1.")


def main(argv=None):
    parser = setup_parser()

    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if getattr(args, 'verbose', False) else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        return dispatch(args)

    except (BudgetExceededError, FactorizationInfeasibleError) as e:
        print(f"Budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except MsrError as e:
        print(f"{e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
