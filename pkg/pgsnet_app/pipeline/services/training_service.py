
import torch
import torch.nn as nn
from loguru import logger
from torch.utils.data import DataLoader
from tqdm import tqdm

from data.loaders import GlassDataset, MultiScaleCollator
from data.services.data_service import DataService
from losses.services.loss_service import LossService
from network.services.network_service import NetworkService
from pipeline.models import Checkpoint
from pipeline.services.interfaces.training_service_interface import TrainingServiceInterface
from pipeline.services.validators.training_service_validator import TrainingServiceValidator
from pgsnet_app import settings
from pgsnet_app.exceptions import NumericalError
from pgsnet_app.logs import progress_disabled
from pgsnet_app.runtime import configure_torch, get_device


class TrainingService(TrainingServiceInterface):
    """
    TrainingService trains PGSNet with SGD, the poly schedule and the deeply supervised hybrid loss.

    Methods:
        poly_lr(iteration, max_iter, cfg)
        build_optimizer(model, cfg)
        train(corpus, cfg)
    """

    def __init__(self):
        self.data_service = DataService()
        self.loss_service = LossService()
        self.network_service = NetworkService()
        self.validator = TrainingServiceValidator()

    def poly_lr(self, iteration, max_iter, cfg):
        self.validator.validate_schedule(iteration, max_iter)
        return cfg.base_lr * (1 - iteration / max_iter) ** cfg.power

    def build_optimizer(self, model, cfg):
        """SGD with momentum; weight decay on convolution weights only."""
        decayed = [m.weight for m in model.modules() if isinstance(m, nn.Conv2d)]
        decayed_ids = {id(p) for p in decayed}
        others = [p for p in model.parameters() if id(p) not in decayed_ids]
        return torch.optim.SGD(
            [
                {'params': decayed, 'weight_decay': cfg.weight_decay},
                {'params': others, 'weight_decay': 0.0},
            ],
            lr=cfg.base_lr,
            momentum=cfg.momentum,
        )

    def train(self, corpus, cfg):
        """
        Train a network on `corpus`.

        Returns:
            tuple: (Checkpoint, list of training-log rows).
        Raises:
            NumericalError: On a non-finite loss or gradient; `snapshot` holds the step inputs.
        """
        self.validator.validate_config(cfg)
        self.validator.validate_corpus(corpus)
        configure_torch(cfg.seed)

        network_cfg = cfg.network_config()
        device = get_device()
        network = self.network_service.build_network(network_cfg).to(device)
        network.train()
        optimizer = self.build_optimizer(network, cfg)
        loss_cfg = cfg.loss_config()

        collator = MultiScaleCollator(self.data_service, cfg.augment_config(), seed=cfg.seed)
        loader = DataLoader(
            GlassDataset(corpus),
            batch_size=cfg.batch_size,
            shuffle=True,
            generator=torch.Generator().manual_seed(cfg.seed),
            collate_fn=collator,
            num_workers=cfg.num_workers,
        )
        max_iter = cfg.max_epochs * len(loader)
        if cfg.num_workers:
            logger.warning("Training with {} data workers; runs are reproducible only with NUM_WORKERS=0",
                           cfg.num_workers)
        logger.info("Training on {} images: {} epochs, {} steps, device {}",
                    len(corpus), cfg.max_epochs, max_iter, settings.DEVICE)

        rows = []
        iteration = 0
        for epoch in range(cfg.max_epochs):
            collator.set_epoch(epoch)
            for images, masks, ids in tqdm(loader, desc=f'epoch {epoch}', disable=progress_disabled()):
                images, masks = images.to(device), masks.to(device)
                lr = self.poly_lr(iteration, max_iter, cfg)
                for group in optimizer.param_groups:
                    group['lr'] = lr

                output = self.network_service.pgsnet_forward(images, network)
                probs = self.loss_service.level_probabilities(output.level_logits, masks.shape[-2:])
                report = self.loss_service.overall_loss(probs, masks, loss_cfg)
                if not torch.isfinite(report.total):
                    self._abort("non-finite loss", iteration, epoch, lr, ids, images, masks, network)

                optimizer.zero_grad()
                report.total.backward()
                if not all(torch.isfinite(p.grad).all() for p in network.parameters() if p.grad is not None):
                    self._abort("non-finite gradient", iteration, epoch, lr, ids, images, masks, network)
                optimizer.step()

                row = {'step': iteration, 'epoch': epoch, 'lr': lr, **report.as_row()}
                rows.append(row)
                if iteration % cfg.log_every == 0:
                    logger.bind(step=iteration, epoch=epoch, lr=lr, loss=row['total']).info(
                        "step {} epoch {} lr {:.6g} loss {:.4f}", iteration, epoch, lr, row['total'])
                iteration += 1
            logger.info("Finished epoch {} of {}", epoch + 1, cfg.max_epochs)

        checkpoint = Checkpoint(
            state_dict={k: v.detach().cpu().clone() for k, v in network.state_dict().items()},
            optimizer_state=optimizer.state_dict(),
            iteration=iteration,
            train_config=cfg,
            network_config=network_cfg,
            schema_version=settings.CHECKPOINT_SCHEMA_VERSION,
        )
        return checkpoint, rows

    @staticmethod
    def _abort(reason, iteration, epoch, lr, ids, images, masks, network):
        snapshot = {
            'reason': reason,
            'step': iteration,
            'epoch': epoch,
            'lr': lr,
            'ids': list(ids),
            'images': images.detach().clone(),
            'masks': masks.detach().clone(),
            'state_dict': {k: v.detach().cpu().clone() for k, v in network.state_dict().items()},
        }
        logger.error("Aborting at step {} (epoch {}): {} on {}", iteration, epoch, reason, ', '.join(ids))
        raise NumericalError(f"Training stopped at step {iteration}: {reason}.", snapshot=snapshot)
