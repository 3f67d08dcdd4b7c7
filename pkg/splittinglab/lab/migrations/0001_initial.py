# Generated by Django 5.1.2 on 2026-10-18 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name="ComputationRun",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("command", models.CharField(choices=[("lagrange", "Lagrange points and spectra"), ("constant_a", "Singularity constant A"), ("separatrix", "Pendulum separatrix samples"), ("splitting", "Splitting distance on a theta section"), ("scaled_splitting", "Splitting on a scaled lambda section"), ("sweep", "Splitting sweep over mass ratios"), ("stokes", "Stokes constant of the inner equation"), ("check_coords", "Coordinate property checks")], max_length=32)),
                ("config", models.JSONField(default=dict)),
                ("status", models.CharField(choices=[("QUEUED", "Queued"), ("RUNNING", "Running"), ("SUCCEEDED", "Succeeded"), ("CHECK_FAILED", "Finished With Failed Checks"), ("FAILED", "Failed")], default="QUEUED", max_length=20)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("started_at", models.DateTimeField(blank=True, null=True)),
                ("finished_at", models.DateTimeField(blank=True, null=True)),
                ("wall_time", models.FloatField(blank=True, null=True)),
                ("exit_code", models.IntegerField(blank=True, null=True)),
                ("error_code", models.CharField(blank=True, default="", max_length=64)),
                ("error_message", models.TextField(blank=True, default="")),
                ("result", models.JSONField(blank=True, null=True)),
                ("manifest", models.JSONField(blank=True, null=True)),
            ],
            options={
                "ordering": ("-created_at",),
            },
        ),
    ]
