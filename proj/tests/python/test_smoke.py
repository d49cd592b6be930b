"""Smoke tests for the python bindings: each major operation gets one
round-trip through the module against values pinned by the C++ suites."""

import math

import pytest

import graphflow as gf


def test_graph_and_permutation():
    g = gf.CategoricalGraph(3, 2, 2)
    g.set_node(1, 1)
    g.set_edge(0, 1, 1)
    g.set_edge(1, 2, 1)
    assert g.dims == 6
    sigma = gf.Permutation([2, 1, 0])
    moved = gf.permute(g, sigma)
    assert moved.edge(0, 1) == 1 and moved.edge(1, 2) == 1
    assert gf.are_isomorphic(g, moved)
    with pytest.raises(Exception):
        gf.are_isomorphic(gf.CategoricalGraph(13, 1, 2),
                          gf.CategoricalGraph(13, 1, 2))


def test_distortions():
    assert gf.distort("polydec", 0.5) == pytest.approx(0.75)
    assert gf.distort("cos", 0.5) == pytest.approx(0.5)
    assert gf.distortion_pdf("polydec", 0.0) == pytest.approx(0.5)
    assert math.isinf(gf.distortion_pdf("cos", 0.0))
    sched = gf.step_schedule("polydec", 2)
    assert sched[0] == pytest.approx((0.0, 0.75))
    assert sched[1] == pytest.approx((0.75, 0.25))


def test_rate_rows_and_residual():
    p0 = [0.5, 0.5]
    row = gf.rstar_row(1, 0, p0, 0.5)
    assert row[0] == pytest.approx(2.0)
    guidance = gf.guidance_row(1, 0, p0, 0.5, 0.1)
    assert guidance[0] == pytest.approx(0.2)

    residual = gf.kolmogorov_residual(
        lambda z: gf.rstar_row(z, 0, p0, 0.3), 0, p0, 0.3)
    assert max(abs(r) for r in residual) < 1e-9

    combined = gf.combined_row(1, 0, p0, 0.5,
                               gf.RateConfig(omega=0.1, eta=1.0))
    assert combined[0] == pytest.approx(2.95)


def test_initial_distributions_and_noising():
    ds = gf.toy_enumerable_dataset()
    marginal = gf.build_initial("marginal", 2, 2, ds)
    assert marginal.node_p0 == pytest.approx([0.5, 0.5])
    rng = gf.Rng(3)
    g_t = gf.noise_graph(ds.graphs[0], marginal, 1.0, rng)
    assert g_t == ds.graphs[0]
    masking = gf.build_initial("masking", 2, 2)
    g0 = gf.sample_initial(masking, 3, rng)
    assert g0.x_card == 3 and all(s == 2 for s in g0.node_states())


def test_oracle_and_rrwp():
    ds = gf.toy_enumerable_dataset()
    dist = gf.build_initial("marginal", 2, 2, ds)
    post = gf.oracle_posterior(ds.graphs[0], 0.9, ds, dist)
    assert post.node_probs[0][0] > 0.99
    path = gf.CategoricalGraph(3, 1, 2)
    path.set_edge(0, 1, 1)
    path.set_edge(1, 2, 1)
    feats = gf.rrwp(path, 3)
    assert feats.node_feats[1][2] == pytest.approx(1.0)  # diag(M^2) center


def test_train_sample_eval_roundtrip():
    ds = gf.generate("tree", n_graphs=4, n_min=5, n_max=5, seed=3)
    cfg = gf.TrainConfig()
    cfg.epochs = 30
    cfg.hidden = 8
    cfg.rrwp_depth = 3
    cfg.draws_per_graph = 4
    cfg.batch_size = 1
    cfg.seed = 1
    result = gf.train(ds, cfg)
    assert len(result.epoch_loss) == 30

    model = gf.FeaturizedDenoiser(result.params)
    sc = gf.SampleConfig()
    sc.n_steps = 32
    sc.seed = 9
    out = gf.sample(model, result.initial, ds.node_counts(), sc, 10)
    assert len(out) == 10
    report = gf.vun(out, ds, gf.is_tree)
    assert 0.0 <= report.vun_frac <= 1.0

    # metrics on raw graph lists
    ratio = gf.ratio_metric(ds.graphs, out, ds.graphs)
    assert ratio >= 0.0


def test_checkpoint_roundtrip_via_json():
    ds = gf.generate("tree", n_graphs=2, n_min=4, n_max=4, seed=5)
    cfg = gf.TrainConfig()
    cfg.epochs = 2
    cfg.hidden = 4
    cfg.rrwp_depth = 2
    cfg.draws_per_graph = 2
    result = gf.train(ds, cfg)
    text = result.params.to_json()
    back = gf.params_from_json(text)
    assert back.to_json() == text


def test_enumerator_and_verify():
    ds = gf.toy_enumerable_dataset()
    dist = gf.build_initial("masking", 2, 2, ds)
    oracle = gf.OracleDenoiser(ds, dist)
    sc = gf.SampleConfig()
    sc.n_steps = 64
    sc.rate = gf.RateConfig(exact_expectation=True)
    enum = gf.exact_generated_distribution(oracle, dist, 2, ds, sc)
    assert sum(enum.probs) == pytest.approx(1.0, abs=1e-9)
    assert enum.tv_to_dataset < 0.05

    assert gf.verify_kolmogorov(100, 1).all_pass()
    assert gf.verify_detailed_balance(100, 2).all_pass()
    assert gf.verify_tv_scaling().all_pass()


def test_planarity_and_stats():
    k5 = gf.CategoricalGraph(5, 1, 2)
    for i in range(5):
        for j in range(i + 1, 5):
            k5.set_edge(i, j, 1)
    assert not gf.is_planar(k5)
    k5.set_edge(0, 1, 0)
    assert gf.is_planar(k5)
    k2 = gf.CategoricalGraph(2, 1, 2)
    k2.set_edge(0, 1, 1)
    eigs = gf.graph_stats(k2).laplacian_eigs
    assert eigs[0] == pytest.approx(0.0, abs=1e-9)
    assert eigs[1] == pytest.approx(2.0, abs=1e-9)


def test_guided_posterior_endpoints():
    ds = gf.toy_enumerable_dataset()
    dist = gf.build_initial("marginal", 2, 2, ds)
    oracle = gf.OracleDenoiser(ds, dist)
    g = ds.graphs[0]
    cond = oracle.posterior(g, 0.5)
    uncond = oracle.posterior(g, 0.2)
    assert gf.guided_posterior(cond, uncond, 1.0).node_probs == cond.node_probs
    assert gf.guided_posterior(cond, uncond, 0.0).node_probs == uncond.node_probs
