"""Batch command line: solving, verifying, reducing, playing, serving.

Exit codes: 0 ok, 1 assertion failure, 2 usage error. Reports print one line
per check and can drop CSV plus PNG artifacts beside each other.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from pathlib import Path

from .geometry import rat_to_float, rat_to_str
from .polygons import (HOLES, SIMPLE, apply_move, is_terminal, legal_moves,
                       state_from_json, state_to_json, winner, new_game)
from .solver import (DEFAULT_BUDGET, find_greedy_counterexample, solve,
                     verify_last_player_theorem, convex_position)
from .strategy import greedy_move


def main(argv=None) -> int:
    return run(argv if argv is not None else sys.argv[1:])


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except FileNotFoundError as err:
        print(json.dumps({"error": "unreadable-file", "detail": str(err)}),
              file=sys.stderr)
        return 2


def _build_parser():
    parser = argparse.ArgumentParser(prog="dotspolygons")
    sub = parser.add_subparsers()

    p_solve = sub.add_parser("solve", help="exact value of a game state")
    p_solve.add_argument("state", help="game state JSON file")
    p_solve.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_solve.add_argument("--line", action="store_true",
                         help="also compute the principal line")
    p_solve.set_defaults(func=_cmd_solve)

    p_verify = sub.add_parser("verify", help="theorem / reduction reports")
    v_sub = p_verify.add_subparsers()

    p_thm = v_sub.add_parser("theorem", help="last-player theorem at n=3..7")
    p_thm.add_argument("--n", type=int, required=True)
    p_thm.add_argument("--trials", type=int, default=10)
    p_thm.add_argument("--seed", type=int, default=0)
    p_thm.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_thm.add_argument("--out-dir", type=Path, default=None,
                       help="write report.csv and margins.png here")
    p_thm.set_defaults(func=_cmd_verify_theorem)

    p_red = v_sub.add_parser("reduction", help="3-SAT <-> cycle packing")
    p_red.add_argument("cnf", help="DIMACS file")
    p_red.add_argument("--out-dir", type=Path, default=None)
    p_red.set_defaults(func=_cmd_verify_reduction)

    p_reduce = sub.add_parser("reduce", help="run a constructive reduction")
    p_reduce.add_argument("which", choices=["sat2vcp", "vcp2boxes",
                                            "vcp2polygons"])
    p_reduce.add_argument("input",
                          help="DIMACS file (sat2vcp) or embedding JSON / "
                               "fixture name (vcp2*)")
    p_reduce.add_argument("-o", "--output", required=True, type=Path)
    p_reduce.add_argument("--plot", type=Path, default=None,
                          help="also render a PNG here")
    p_reduce.set_defaults(func=_cmd_reduce)

    p_play = sub.add_parser("play", help="self-play transcript")
    p_play.add_argument("--points", type=Path, default=None,
                        help="JSON [[x,y],...] rational strings")
    p_play.add_argument("--random-n", type=int, default=None)
    p_play.add_argument("--variant", choices=[SIMPLE, HOLES], default=SIMPLE)
    p_play.add_argument("--ai", choices=["greedy", "random"], default="greedy")
    p_play.add_argument("--seed", type=int, default=0)
    p_play.set_defaults(func=_cmd_play)

    p_serve = sub.add_parser("serve", help="run the HTTP session service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.set_defaults(func=_cmd_serve)

    p_greedy = sub.add_parser("greedy-witness",
                              help="search a state where greedy forfeits a win")
    p_greedy.add_argument("--n", type=int, default=6)
    p_greedy.add_argument("--trials", type=int, default=200)
    p_greedy.add_argument("--seed", type=int, default=0)
    p_greedy.add_argument("-o", "--output", type=Path, default=None)
    p_greedy.set_defaults(func=_cmd_greedy_witness)

    return parser


def _cmd_solve(args) -> int:
    data = json.loads(Path(args.state).read_text())
    state = state_from_json(data)
    result = solve(state, budget=args.budget, line=args.line)
    report = {
        "margin": None if result.margin is None else rat_to_str(result.margin),
        "marginFloat": None if result.margin is None else rat_to_float(result.margin),
        "bestMove": list(result.best_move) if result.best_move else None,
        "nodes": result.nodes,
        "line": [list(m) for m in result.canonical_line] if result.canonical_line else None,
        "partial": result.partial,
    }
    print(json.dumps(report, indent=2))
    return 0


def _cmd_verify_theorem(args) -> int:
    report = verify_last_player_theorem(args.n, args.trials, args.seed,
                                        budget=args.budget)
    last = "R" if args.n % 2 == 1 else "B"
    print(f"n={args.n} last={last} seed={args.seed}: "
          f"{report.passes}/{args.trials} pass, {report.partials} partial")
    for pts, margin in report.counterexamples:
        print(f"  COUNTEREXAMPLE margin={rat_to_str(margin)} points="
              f"{[[rat_to_str(p.x), rat_to_str(p.y)] for p in pts]}")
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        with open(args.out_dir / "report.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["trial", "margin", "margin_float"])
            for k, margin in enumerate(report.margins):
                writer.writerow([k, rat_to_str(margin), rat_to_float(margin)])
        from .plots import save_margin_histogram
        save_margin_histogram(
            args.out_dir / "margins.png", report.margins,
            f"solved margins, n={args.n} (last player {last})")
        print(f"wrote {args.out_dir}/report.csv and margins.png")
    return 0 if report.ok else 1


def _cmd_verify_reduction(args) -> int:
    from .reductions.cnf import parse_dimacs
    from .reductions.verify import verify_reduction
    instance = parse_dimacs(Path(args.cnf).read_text())
    report = verify_reduction(instance)
    status = "OK" if report.ok else "FAIL"
    print(f"sat={report.satisfiable} target={report.target} "
          f"packing={report.packing} planar={report.planar_incidence} "
          f"equivalent={report.equivalent} -> {status}")
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        with open(args.out_dir / "reduction.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["satisfiable", "target", "packing",
                             "planar_incidence", "equivalent"])
            writer.writerow([report.satisfiable, report.target, report.packing,
                             report.planar_incidence, report.equivalent])
        print(f"wrote {args.out_dir}/reduction.csv")
    return 0 if report.ok else 1


def _cmd_reduce(args) -> int:
    from .reductions import embedding as emb
    if args.which == "sat2vcp":
        from .reductions.cnf import parse_dimacs
        from .reductions.gadgets import sat_to_vcp
        from .reductions.vcp import graph_to_json
        instance = parse_dimacs(Path(args.input).read_text())
        gadget = sat_to_vcp(instance)
        data = graph_to_json(gadget.graph, labels=gadget.labels, meta={
            "K_s": gadget.big_k_s, "K_v": gadget.big_k_v,
            "m": gadget.n_clauses, "target": gadget.target,
            "planarIncidence": gadget.planar_incidence,
        })
        args.output.write_text(json.dumps(data, indent=2, default=str))
        if args.plot:
            from .plots import draw_gadget_graph, save_figure
            save_figure(args.plot, draw_gadget_graph, gadget.graph,
                        labels=gadget.labels,
                        title=f"gadget graph, target {gadget.target}")
        print(f"wrote {args.output} (target {gadget.target})")
        return 0
    embedding = _load_embedding(args.input)
    if args.which == "vcp2boxes":
        from .boxes import board_to_json, render_board
        from .reductions.to_boxes import vcp_to_boxes
        board = vcp_to_boxes(embedding)
        args.output.write_text(json.dumps(board_to_json(board), indent=2))
        if args.plot:
            from .plots import draw_boxes_state, save_figure
            save_figure(args.plot, draw_boxes_state, board,
                        title="Dots & Boxes reduction board")
        print(render_board(board))
        print(f"wrote {args.output}")
        return 0
    from .reductions.to_polygons import vcp_to_polygons
    board = vcp_to_polygons(embedding)
    args.output.write_text(json.dumps(state_to_json(board.state), indent=2))
    if args.plot:
        from .plots import draw_polygon_state, save_figure
        save_figure(args.plot, draw_polygon_state, board.state,
                    title=f"Dots & Simple Polygons board, bell area "
                          f"{rat_to_str(board.a_bell)}")
    print(f"wrote {args.output} (bells: {len(board.bells)}, "
          f"a_bell: {rat_to_str(board.a_bell)})")
    return 0


def _load_embedding(spec: str):
    from .reductions import embedding as emb
    path = Path(spec)
    if path.exists():
        return emb.embedding_from_json(json.loads(path.read_text()))
    return emb.fixture_embedding(spec)


def _cmd_play(args) -> int:
    rng = random.Random(args.seed)
    if args.points:
        from .geometry import Point, rat_from_str
        raw = json.loads(Path(args.points).read_text())
        pts = [Point(rat_from_str(str(x)), rat_from_str(str(y)))
               for x, y in raw]
    else:
        n = args.random_n or 5
        pts = convex_position(n, rng)
    state = new_game(pts, args.variant)
    turn = 0
    while not is_terminal(state):
        mover = state.to_move
        if args.ai == "greedy":
            move = greedy_move(state)
        else:
            move = rng.choice(legal_moves(state))
        state, outcome = apply_move(state, *move)
        turn += 1
        print(f"{turn:3d}. {mover} plays {move} scored={rat_to_str(outcome.scored)}")
    print(f"final: R={rat_to_str(state.score_r)} B={rat_to_str(state.score_b)} "
          f"winner={winner(state)}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn
    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def _cmd_greedy_witness(args) -> int:
    witness = find_greedy_counterexample(args.n, args.trials, args.seed)
    if witness is None:
        print("no counterexample found in the given trials")
        return 1
    payload = {
        "variant": witness.variant,
        "points": [[rat_to_str(p.x), rat_to_str(p.y)] for p in witness.points],
        "prefix": [list(m) for m in witness.prefix],
        "margin": rat_to_str(witness.margin),
        "greedyFinalDiff": rat_to_str(witness.greedy_final_diff),
    }
    text = json.dumps(payload, indent=2)
    if args.output:
        args.output.write_text(text)
        print(f"wrote {args.output}")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
